#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gq {

// Monte Carlo expectation with batch-means standard error and provenance.
struct MeasureEstimate {
  double mean = 0.0;
  double se = 0.0;
  long long n_samples = 0;
  std::uint64_t seed = 0;
  long long burn_in = 0;
};

// Sequential batch-means accumulator: n_batches batches of batch_len samples,
// planned up front. Batches from independent chains with equal batch_len can
// be pooled; the pooling is associative and order-independent.
class BatchMeans {
 public:
  BatchMeans(int n_batches, long long batch_len);

  void add(double x);
  bool complete() const { return filled_ == n_batches_; }
  long long capacity() const { return 1LL * n_batches_ * batch_len_; }
  long long batch_len() const { return batch_len_; }
  const std::vector<double>& batch_means() const { return means_; }

  // Requires >= 20 filled batches.
  MeasureEstimate estimate() const;

 private:
  int n_batches_;
  long long batch_len_;
  int filled_ = 0;
  long long in_batch_ = 0;
  double batch_sum_ = 0.0;
  std::vector<double> means_;
};

// Pool batch means of equal batch length (>= 20 in total).
MeasureEstimate pool_batches(std::span<const double> means,
                             long long batch_len);

}  // namespace gq
