#include "gibbsq/estimate.hpp"

#include <cmath>
#include <stdexcept>

namespace gq {

BatchMeans::BatchMeans(int n_batches, long long batch_len)
    : n_batches_(n_batches), batch_len_(batch_len) {
  if (n_batches < 20)
    throw std::invalid_argument("BatchMeans: need at least 20 batches");
  if (batch_len < 1) throw std::invalid_argument("BatchMeans: batch_len < 1");
  means_.reserve(n_batches);
}

void BatchMeans::add(double x) {
  if (filled_ == n_batches_)
    throw std::invalid_argument("BatchMeans: capacity exceeded");
  batch_sum_ += x;
  if (++in_batch_ == batch_len_) {
    means_.push_back(batch_sum_ / double(batch_len_));
    batch_sum_ = 0.0;
    in_batch_ = 0;
    ++filled_;
  }
}

MeasureEstimate BatchMeans::estimate() const {
  return pool_batches(means_, batch_len_);
}

MeasureEstimate pool_batches(std::span<const double> means,
                             long long batch_len) {
  const int b = static_cast<int>(means.size());
  if (b < 20) throw std::invalid_argument("pool_batches: fewer than 20 batches");
  double m = 0.0;
  for (double x : means) m += x;
  m /= b;
  double var = 0.0;
  for (double x : means) var += (x - m) * (x - m);
  var /= double(b - 1);
  MeasureEstimate e;
  e.mean = m;
  e.se = std::sqrt(var / double(b));
  e.n_samples = batch_len * b;
  return e;
}

}  // namespace gq
