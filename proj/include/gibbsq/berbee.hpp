#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace gq {

// Uniform variation sequence r_1, r_2, ... (1-based; r_k >= 0).
struct VariationSequence {
  std::vector<double> r;  // r[k-1] holds r_k

  static VariationSequence from_function(const std::function<double(int)>& f,
                                         int M);

  int size() const { return static_cast<int>(r.size()); }
  // r_0 is not part of the sequence; the chain extends it as r_0 := r_1,
  // which is exact for one-point potentials of the form K + beta u_0 (...)
  // where flipping u_0 does not enlarge the depth-1 oscillation.
  double r_k(int k) const;
  bool non_increasing() const;
  VariationSequence monotone_envelope() const;  // r_k := max_{m>=k} r_m
};

// Truncated absorbing Markov matrix on states {0, ..., k_max}:
//   P[0][0] = 1, P[0][j] = 0 (j > 0)
//   P[i][i-1] = e^{-r_{i-1}}          (i >= 1)
//   P[i][j]   = e^{-r_{j+1}} - e^{-r_j}   (j >= i >= 1)
//   P[i][j]   = 0                      (j < i - 1)
// Up-moves past k_max are dropped (cemetery), so row sums are <= 1 and every
// absorption probability computed from the matrix is a lower bound for the
// untruncated chain.
struct BerbeeChain {
  int k_max;
  std::vector<double> P;  // (k_max+1)^2 row-major
  VariationSequence r;

  double at(int i, int j) const { return P[std::size_t(i) * (k_max + 1) + j]; }
  double row_sum(int i) const;
};

// Requires r non-increasing with at least k_max + 1 entries.
BerbeeChain build_berbee_matrix(const VariationSequence& r, int k_max);

// P(Z_N = 0 | Z_0 = k); O(k_max) per step via prefix sums.
double absorption_probability(const BerbeeChain& chain, long long N, int k);

// absorption_probability squared: the lower bound on the measure ratio
// rho_k between two [0,N)-Gibbsian measures sharing the envelope r.
double mixing_lower_bound(const BerbeeChain& chain, long long N, int k);

// Partial sums S_M = sum_{n<=M} exp(-r_1 - ... - r_n). Divergence of the
// full series has no finite certificate; this is a diagnostic curve only.
std::vector<double> berbee_condition_partial_sums(const VariationSequence& r,
                                                  int M);

// Least-squares fit of S_n against log n over the second half of the curve,
// plus the fraction of the total accumulated in the last quarter.
struct GrowthDiagnostic {
  double log_slope = 0.0;
  double r2 = 0.0;
  double last_quarter_fraction = 0.0;
};
GrowthDiagnostic partial_sum_growth(const std::vector<double>& sums);

// Direct Monte Carlo of the truncated chain; independent check on the
// matrix iteration. Returns the absorbed fraction, se if requested.
double simulate_absorption(const BerbeeChain& chain, long long N, int k,
                           long long paths, std::uint64_t seed,
                           double* se_out = nullptr);

}  // namespace gq
