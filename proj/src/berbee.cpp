#include "gibbsq/berbee.hpp"

#include <cmath>
#include <stdexcept>

#include "gibbsq/rng.hpp"

namespace gq {

VariationSequence VariationSequence::from_function(
    const std::function<double(int)>& f, int M) {
  VariationSequence v;
  v.r.reserve(M);
  for (int k = 1; k <= M; ++k) v.r.push_back(f(k));
  return v;
}

double VariationSequence::r_k(int k) const {
  if (k < 0 || k > size())
    throw std::invalid_argument("VariationSequence: index out of range");
  if (k == 0) return r.empty() ? 0.0 : r[0];
  return r[k - 1];
}

bool VariationSequence::non_increasing() const {
  for (std::size_t i = 1; i < r.size(); ++i)
    if (r[i] > r[i - 1]) return false;
  return true;
}

VariationSequence VariationSequence::monotone_envelope() const {
  VariationSequence v = *this;
  for (int i = v.size() - 2; i >= 0; --i)
    v.r[i] = std::max(v.r[i], v.r[i + 1]);
  return v;
}

double BerbeeChain::row_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j <= k_max; ++j) s += at(i, j);
  return s;
}

BerbeeChain build_berbee_matrix(const VariationSequence& r, int k_max) {
  if (k_max < 1) throw std::invalid_argument("build_berbee_matrix: k_max < 1");
  if (r.size() < k_max + 1)
    throw std::invalid_argument(
        "build_berbee_matrix: need r_1..r_{k_max+1} entries");
  for (double x : r.r)
    if (x < 0.0)
      throw std::invalid_argument("build_berbee_matrix: negative variation");
  if (!r.non_increasing())
    throw std::invalid_argument(
        "build_berbee_matrix: r must be non-increasing; pass the monotone "
        "envelope r_k = sup_{m>=k} r_m");

  BerbeeChain c;
  c.k_max = k_max;
  c.r = r;
  const int n = k_max + 1;
  c.P.assign(std::size_t(n) * n, 0.0);
  c.P[0] = 1.0;
  for (int i = 1; i <= k_max; ++i) {
    c.P[std::size_t(i) * n + (i - 1)] = std::exp(-r.r_k(i - 1));
    for (int j = i; j <= k_max; ++j)
      c.P[std::size_t(i) * n + j] =
          std::exp(-r.r_k(j + 1)) - std::exp(-r.r_k(j));
  }
  return c;
}

double absorption_probability(const BerbeeChain& chain, long long N, int k) {
  if (k < 0 || k > chain.k_max)
    throw std::invalid_argument("absorption_probability: k out of range");
  if (N < 0) throw std::invalid_argument("absorption_probability: N < 0");
  if (k == 0) return 1.0;

  const int km = chain.k_max;
  std::vector<double> ed(km + 2);  // ed[j] = e^{-r_j}, with r_0 := r_1
  for (int j = 0; j <= km + 1; ++j) ed[j] = std::exp(-chain.r.r_k(j));

  std::vector<double> v(km + 1, 0.0), nv(km + 1);
  v[k] = 1.0;
  for (long long t = 0; t < N; ++t) {
    // prefix[j] = sum_{i=1..j} v[i]; the up-block entry for column j is the
    // same value e^{-r_{j+1}} - e^{-r_j} for every row i <= j.
    nv[0] = v[0] + (km >= 1 ? v[1] * ed[0] : 0.0);
    double prefix = 0.0;
    for (int j = 1; j <= km; ++j) {
      prefix += v[j];
      double x = (ed[j + 1] - ed[j]) * prefix;
      if (j + 1 <= km) x += v[j + 1] * ed[j];
      nv[j] = x;
    }
    v.swap(nv);
    if (v[0] >= 1.0) break;  // fully absorbed (r == 0 countdown)
  }
  return v[0];
}

double mixing_lower_bound(const BerbeeChain& chain, long long N, int k) {
  const double p = absorption_probability(chain, N, k);
  return p * p;
}

std::vector<double> berbee_condition_partial_sums(const VariationSequence& r,
                                                  int M) {
  if (M < 1) throw std::invalid_argument("partial_sums: M < 1");
  if (r.size() < M)
    throw std::invalid_argument("partial_sums: sequence shorter than M");
  std::vector<double> out;
  out.reserve(M);
  double log_term = 0.0, s = 0.0;
  for (int n = 1; n <= M; ++n) {
    log_term -= r.r_k(n);
    s += std::exp(log_term);
    out.push_back(s);
  }
  return out;
}

GrowthDiagnostic partial_sum_growth(const std::vector<double>& sums) {
  GrowthDiagnostic d;
  const int m = static_cast<int>(sums.size());
  if (m < 8) throw std::invalid_argument("partial_sum_growth: too few points");

  // regression of S_n on log n over the second half
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int cnt = 0;
  for (int n = m / 2; n <= m; ++n) {
    const double x = std::log(double(n));
    const double y = sums[n - 1];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++cnt;
  }
  const double vx = sxx - sx * sx / cnt;
  const double vy = syy - sy * sy / cnt;
  const double cxy = sxy - sx * sy / cnt;
  d.log_slope = vx > 0 ? cxy / vx : 0.0;
  d.r2 = (vx > 0 && vy > 0) ? (cxy * cxy) / (vx * vy) : 1.0;
  d.last_quarter_fraction =
      (sums[m - 1] - sums[(3 * m) / 4 - 1]) / sums[m - 1];
  return d;
}

double simulate_absorption(const BerbeeChain& chain, long long N, int k,
                           long long paths, std::uint64_t seed,
                           double* se_out) {
  if (k < 0 || k > chain.k_max)
    throw std::invalid_argument("simulate_absorption: k out of range");
  const int km = chain.k_max;
  std::vector<double> ed(km + 2);
  for (int j = 0; j <= km + 1; ++j) ed[j] = std::exp(-chain.r.r_k(j));

  Rng rng(seed);
  long long hits = 0;
  for (long long p = 0; p < paths; ++p) {
    int z = k;
    for (long long t = 0; t < N && z > 0; ++t) {
      const double u = rng.uniform01();
      if (u < ed[z - 1]) {
        --z;
        continue;
      }
      // up-moves: cumulative mass to columns [z..j] is e^{-r_{j+1}} - e^{-r_z}
      const double target = u - ed[z - 1] + ed[z];
      int j = z;
      while (j <= km && ed[j + 1] < target) ++j;
      if (j > km) {
        z = -1;  // cemetery: never absorbed
        break;
      }
      z = j;
    }
    if (z == 0) ++hits;
  }
  const double phat = double(hits) / double(paths);
  if (se_out) *se_out = std::sqrt(phat * (1.0 - phat) / double(paths));
  return phat;
}

}  // namespace gq
