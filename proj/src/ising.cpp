#include "gibbsq/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "gibbsq/errors.hpp"
#include "gibbsq/parallel.hpp"

namespace gq {

namespace {

double pair_weight(double alpha, long d) { return std::pow(double(d), -alpha); }

// field at site i from the boundary tail [N, inf)
double boundary_field(int i, int n, const BoundaryCondition& bc,
                      const PotentialSpec& spec) {
  if (bc.kind == BoundaryKind::Fixed) {
    const long terms = std::min<long>(spec.R, static_cast<long>(bc.tail.size()));
    double h = 0.0;
    for (long m = 0; m < terms; ++m)
      h += bc.tail[m] * pair_weight(spec.alpha, n + m - i);
    return h;
  }
  const int s = bc.sign();
  return s == 0 ? 0.0 : s * power_tail(spec.alpha, n - i);
}

double stable_sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void check_sites(std::span<const int> sites, int n) {
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] < 0 || sites[k] >= n)
      throw std::invalid_argument("sites must lie in [0, N)");
    for (std::size_t l = 0; l < k; ++l)
      if (sites[l] == sites[k])
        throw std::invalid_argument("sites must be distinct");
  }
}

}  // namespace

double subset_potential(std::span<const int> assignment,
                        std::span<const int> sites, const SpinWindow& frozen,
                        const PotentialSpec& spec) {
  spec.validate();
  const int n = frozen.n();
  if (assignment.size() != sites.size())
    throw std::invalid_argument("subset_potential: assignment/sites mismatch");
  check_sites(sites, n);

  std::vector<int> u(frozen.spins);
  std::vector<char> in_lambda(n, 0);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    u[sites[k]] = assignment[k];
    in_lambda[sites[k]] = 1;
  }
  for (int s : u)
    if (s != 1 && s != -1)
      throw std::invalid_argument("subset_potential: spins must be +-1");

  double e = spec.K * double(sites.size());
  // pair terms with at least one endpoint in Lambda
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (in_lambda[i] || in_lambda[j])
        e += spec.beta * u[i] * u[j] * pair_weight(spec.alpha, j - i);
  // tail terms for Lambda sites
  for (int i = 0; i < n; ++i)
    if (in_lambda[i])
      e += spec.beta * u[i] * boundary_field(i, n, frozen.bc, spec);
  return e;
}

double log_local_partition(std::span<const int> sites,
                           const SpinWindow& frozen,
                           const PotentialSpec& spec) {
  const std::size_t m = sites.size();
  if (m > 25) throw ResourceError("local_partition: more than 25 sites");
  if (m == 0) return 0.0;

  std::vector<int> assign(m, -1);
  double max_e = -std::numeric_limits<double>::infinity();
  std::vector<double> energies;
  energies.reserve(std::size_t(1) << m);
  // plain enumeration; subset sizes used in practice are small
  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << m); ++mask) {
    for (std::size_t k = 0; k < m; ++k)
      assign[k] = (mask >> k) & 1u ? +1 : -1;
    const double e = subset_potential(assign, sites, frozen, spec);
    energies.push_back(e);
    max_e = std::max(max_e, e);
  }
  double z = 0.0;
  for (double e : energies) z += std::exp(e - max_e);
  return max_e + std::log(z);
}

double local_partition(std::span<const int> sites, const SpinWindow& frozen,
                       const PotentialSpec& spec) {
  return std::exp(log_local_partition(sites, frozen, spec));
}

double gibbs_prob(std::span<const int> assignment, std::span<const int> sites,
                  const SpinWindow& frozen, const PotentialSpec& spec) {
  const double phi = subset_potential(assignment, sites, frozen, spec);
  return std::exp(phi - log_local_partition(sites, frozen, spec));
}

std::vector<double> exact_marginals(int N, const BoundaryCondition& bc,
                                    const PotentialSpec& spec) {
  spec.validate();
  if (N < 1) throw std::invalid_argument("exact_marginals: N < 1");
  if (N > 20) throw ResourceError("exact_marginals: N > 20");

  std::vector<double> w(N), h(N);
  for (int d = 1; d < N; ++d) w[d] = pair_weight(spec.alpha, d);
  for (int i = 0; i < N; ++i) h[i] = boundary_field(i, N, bc, spec);

  const std::uint32_t states = std::uint32_t(1) << N;
  std::vector<double> logw(states);

  // Gray-code walk with incrementally maintained pair fields
  std::vector<int> s(N, -1);
  std::vector<double> field(N, 0.0);  // sum_{j != i} s_j w_|i-j|
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (j != i) field[i] += s[j] * w[std::abs(i - j)];

  double e = spec.K * N;
  for (int i = 0; i < N; ++i) {
    e += spec.beta * s[i] * h[i];
    for (int j = i + 1; j < N; ++j) e += spec.beta * s[i] * s[j] * w[j - i];
  }
  logw[0] = e;

  for (std::uint32_t k = 1; k < states; ++k) {
    const int b = std::countr_zero(k);
    const int snew = -s[b];
    e += spec.beta * (snew - s[b]) * (field[b] + h[b]);
    const int delta = snew - s[b];
    s[b] = snew;
    for (int j = 0; j < N; ++j)
      if (j != b) field[j] += delta * w[std::abs(j - b)];
    logw[k ^ (k >> 1)] = e;
  }

  const double m = *std::max_element(logw.begin(), logw.end());
  double z = 0.0;
  for (double lw : logw) z += std::exp(lw - m);
  std::vector<double> probs(states);
  for (std::uint32_t i = 0; i < states; ++i)
    probs[i] = std::exp(logw[i] - m) / z;
  return probs;
}

void decode_state(std::uint32_t idx, int N, std::vector<int>& out) {
  out.resize(N);
  for (int i = 0; i < N; ++i) out[i] = (idx >> i) & 1u ? +1 : -1;
}

double exact_expectation(const std::vector<double>& probs, int N,
                         const std::function<double(std::span<const int>)>& f) {
  if (probs.size() != (std::size_t(1) << N))
    throw std::invalid_argument("exact_expectation: size mismatch");
  std::vector<int> u;
  double acc = 0.0;
  for (std::uint32_t idx = 0; idx < probs.size(); ++idx) {
    decode_state(idx, N, u);
    acc += probs[idx] * f(u);
  }
  return acc;
}

HeatBathChain::HeatBathChain(int N, const PotentialSpec& spec,
                             const BoundaryCondition& bc, std::uint64_t seed)
    : n_(N), spec_(spec), bc_(bc), rng_(seed) {
  spec_.validate();
  if (N < 1) throw std::invalid_argument("HeatBathChain: N < 1");
  w_.resize(N);
  for (int d = 1; d < N; ++d) w_[d] = pair_weight(spec_.alpha, d);
  h_.resize(N);
  for (int i = 0; i < N; ++i) h_[i] = boundary_field(i, N, bc_, spec_);
  spins_.resize(N);
  for (int i = 0; i < N; ++i) spins_[i] = rng_.pm1();
  rebuild_fields();
}

void HeatBathChain::rebuild_fields() {
  field_.assign(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    double f = h_[i];
    for (int j = 0; j < n_; ++j)
      if (j != i) f += spins_[j] * w_[std::abs(i - j)];
    field_[i] = f;
  }
}

void HeatBathChain::sweep() {
  for (int i = 0; i < n_; ++i) {
    const double p_plus = stable_sigmoid(2.0 * spec_.beta * field_[i]);
    const int snew = rng_.uniform01() < p_plus ? +1 : -1;
    if (snew != spins_[i]) {
      const int delta = snew - spins_[i];
      spins_[i] = snew;
      for (int j = 0; j < n_; ++j)
        if (j != i) field_[j] += delta * w_[std::abs(i - j)];
    }
  }
}

double HeatBathChain::magnetization() const {
  double m = 0.0;
  for (int s : spins_) m += s;
  return m / double(n_);
}

NuPMStream::NuPMStream(int N, int sign, const PotentialSpec& spec,
                       long long sweeps, long long burn_in, std::uint64_t seed)
    : chain_(N, spec,
             sign > 0 ? BoundaryCondition::all_plus()
                      : BoundaryCondition::all_minus(),
             seed),
      total_(sweeps - burn_in),
      seed_(seed),
      burn_in_(burn_in) {
  if (sweeps <= burn_in)
    throw std::invalid_argument("NuPMStream: sweeps must exceed burn_in");
  if (sign == 0) throw std::invalid_argument("NuPMStream: sign must be +-1");
  for (long long t = 0; t < burn_in; ++t) chain_.sweep();
}

bool NuPMStream::next() {
  if (produced_ >= total_) return false;
  chain_.sweep();
  ++produced_;
  return true;
}

MeasureEstimate estimate_expectation(
    const std::function<double(std::span<const int>)>& f, NuPMStream& stream,
    int batches) {
  const long long avail = stream.total() - stream.produced();
  if (avail < batches)
    throw std::invalid_argument("estimate_expectation: stream too short");
  BatchMeans bm(batches, avail / batches);
  while (!bm.complete() && stream.next()) bm.add(f(stream.spins()));
  MeasureEstimate e = bm.estimate();
  e.seed = stream.seed();
  e.burn_in = stream.burn_in();
  return e;
}

MeasureEstimate estimate_nu_pm(
    int N, int sign, const PotentialSpec& spec,
    const std::function<double(std::span<const int>)>& f,
    long long sweeps_per_chain, long long burn_in, std::uint64_t master_seed,
    int chains, int batches_per_chain) {
  if (chains < 1) throw std::invalid_argument("estimate_nu_pm: chains < 1");
  const long long per_chain = sweeps_per_chain - burn_in;
  const long long batch_len = per_chain / batches_per_chain;
  if (batch_len < 1)
    throw std::invalid_argument("estimate_nu_pm: too few sweeps");

  std::vector<std::vector<double>> chain_means(chains);
  parallel_for(std::size_t(chains), [&](std::size_t c) {
    NuPMStream stream(N, sign, spec, sweeps_per_chain, burn_in,
                      derive_seed(master_seed, c));
    // per-chain batch count may be < 20; batches are pooled across chains
    std::vector<double> means;
    double sum = 0.0;
    long long k = 0;
    int made = 0;
    while (made < batches_per_chain && stream.next()) {
      sum += f(stream.spins());
      if (++k == batch_len) {
        means.push_back(sum / double(batch_len));
        sum = 0.0;
        k = 0;
        ++made;
      }
    }
    chain_means[c] = std::move(means);
  });

  std::vector<double> pooled;
  for (const auto& v : chain_means)
    pooled.insert(pooled.end(), v.begin(), v.end());
  MeasureEstimate e = pool_batches(pooled, batch_len);
  e.seed = master_seed;
  e.burn_in = burn_in;
  return e;
}

}  // namespace gq
