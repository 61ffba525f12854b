#include "gibbsq/factor.hpp"

#include <cmath>
#include <stdexcept>

#include "gibbsq/errors.hpp"
#include "gibbsq/ising.hpp"
#include "gibbsq/parallel.hpp"
#include "gibbsq/rng.hpp"

namespace gq {

int alpha_map(int a) {
  switch (a) {
    case kPlus:
    case kPlusT:
      return +1;
    case kMinus:
    case kMinusT:
      return -1;
  }
  throw std::invalid_argument("alpha_map: not a four-symbol code");
}

std::vector<int> alpha_map_window(std::span<const int> w) {
  std::vector<int> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = alpha_map(w[i]);
  return out;
}

int pi_map(int a) {
  switch (a) {
    case kPlus:
    case kMinus:
      return kBZero;
    case kPlusT:
      return kBPlusT;
    case kMinusT:
      return kBMinusT;
  }
  throw std::invalid_argument("pi_map: not a four-symbol code");
}

std::vector<int> pi_map_window(std::span<const int> w) {
  std::vector<int> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = pi_map(w[i]);
  return out;
}

namespace {

BoundaryCondition sign_bc(int sign) {
  if (sign > 0) return BoundaryCondition::all_plus();
  if (sign < 0) return BoundaryCondition::all_minus();
  return BoundaryCondition::free();
}

}  // namespace

double g_eval(int x0, std::span<const int> tail, const PotentialSpec& spec,
              int completion_sign) {
  std::vector<int> u(tail.size() + 1);
  u[0] = alpha_map(x0);
  for (std::size_t i = 0; i < tail.size(); ++i) u[i + 1] = alpha_map(tail[i]);
  const double q = q_eval(u, spec, sign_bc(completion_sign));
  const double g = (x0 == kPlus || x0 == kMinus) ? q : 0.5 - q;
  if (!(g > 0.0))
    throw std::domain_error("g_eval: nonpositive value; K must satisfy the "
                            "q < 1/2 certificate (choose_K)");
  return g;
}

CylinderFn make_g_cylinder_fn(const PotentialSpec& spec, int completion_sign) {
  return [spec, completion_sign](std::span<const int> word) {
    if (word.empty()) throw std::invalid_argument("g: empty cylinder");
    return g_eval(word[0], word.subspan(1), spec, completion_sign);
  };
}

// Incremental backward sampler. At position n with explicit suffix
// x_{n+1}..x_{L-1} and the sign completion, the spin-weighted sum
//   S_n = sum_{j>=1} alpha(x_{n+j}) j^-alpha
// determines q(+-1, .) = exp(K +- beta S_n); the four-symbol draw follows.
std::vector<int> simulate_g_chain(const PotentialSpec& spec, int length,
                                  std::uint64_t seed, int completion_sign) {
  spec.validate();
  if (length < 1) throw std::invalid_argument("simulate_g_chain: length < 1");
  if (completion_sign != 1 && completion_sign != -1)
    throw std::invalid_argument("simulate_g_chain: completion sign +-1");

  std::vector<double> w(length + 1), tailT(length + 1);
  for (int d = 1; d <= length; ++d) w[d] = std::pow(double(d), -spec.alpha);
  for (int d = 1; d <= length; ++d) tailT[d] = power_tail(spec.alpha, d);

  Rng rng(seed);
  std::vector<int> x(length);
  for (int n = length - 1; n >= 0; --n) {
    double s = completion_sign * tailT[length - n];
    for (int j = 1; n + j < length; ++j) s += alpha_map(x[n + j]) * w[j];
    const double qp = std::exp(spec.K + spec.beta * s);
    const double qm = std::exp(spec.K - spec.beta * s);
    const double u = rng.uniform01();
    if (u < qp)
      x[n] = kPlus;
    else if (u < qp + qm)
      x[n] = kMinus;
    else if (u < qp + qm + (0.5 - qp))
      x[n] = kPlusT;
    else
      x[n] = kMinusT;
  }
  return x;
}

std::vector<std::vector<int>> simulate_g_chains(const PotentialSpec& spec,
                                                int length, int count,
                                                std::uint64_t master_seed,
                                                int completion_sign) {
  std::vector<std::vector<int>> out(count);
  parallel_for(std::size_t(count), [&](std::size_t c) {
    out[c] = simulate_g_chain(spec, length, derive_seed(master_seed, c),
                              completion_sign);
  });
  return out;
}

CounterexampleSpec CounterexampleSpec::make(double beta, double alpha, int N,
                                            long long sweeps,
                                            std::uint64_t seed) {
  CounterexampleSpec cs;
  cs.alpha = alpha;
  cs.beta = beta;
  cs.K = choose_K(beta, alpha);
  cs.N = N;
  cs.sweeps = sweeps;
  cs.seed = seed;
  return cs;
}

FactorWindow FactorWindow::zero_n(int N, int sign) {
  FactorWindow y;
  y.head.assign(N, kBZero);
  y.tail_sign = sign;
  return y;
}

bool FactorWindow::all_zero_head() const {
  for (int s : head)
    if (s != kBZero) return false;
  return true;
}

namespace {

// q(s, u) with u the sampled window of nu_N^{sign}: explicit terms for the
// window, analytic tail for the +-1 boundary from position N on.
std::function<double(std::span<const int>)> make_q_functional(
    int s, int N, int boundary_sign, const PotentialSpec& spec) {
  std::vector<double> w(N + 1);
  for (int j = 1; j <= N; ++j) w[j] = std::pow(double(j), -spec.alpha);
  const double tail = boundary_sign * power_tail(spec.alpha, N + 1);
  const double K = spec.K, beta = spec.beta;
  return [w, tail, K, beta, s](std::span<const int> u) {
    double inner = tail;
    for (std::size_t j = 0; j < u.size(); ++j) inner += u[j] * w[j + 1];
    return std::exp(K + beta * s * inner);
  };
}

}  // namespace

MeasureEstimate q_expectation_nu(int s, int N, int sign,
                                 const CounterexampleSpec& cs) {
  const PotentialSpec spec = cs.pot();
  const auto f = make_q_functional(s, N, sign, spec);
  const std::uint64_t stream_seed =
      derive_seed(cs.seed, sign > 0 ? 0x70ULL : 0x6dULL);
  return estimate_nu_pm(N, sign, spec, f, cs.sweeps, cs.effective_burn_in(),
                        stream_seed, cs.chains, cs.batches_per_chain);
}

double exact_q_expectation(int s, int N, int sign, const PotentialSpec& spec) {
  const auto probs = exact_marginals(N, sign_bc(sign), spec);
  const auto f = make_q_functional(s, N, sign, spec);
  return exact_expectation(probs, N, f);
}

namespace {

MeasureEstimate combine_for_symbol(int y0, const MeasureEstimate& qp,
                                   const MeasureEstimate& qm) {
  MeasureEstimate e;
  switch (y0) {
    case kBPlusT:
      e.mean = 0.5 - qp.mean;
      e.se = qp.se;
      e.n_samples = qp.n_samples;
      break;
    case kBMinusT:
      e.mean = 0.5 - qm.mean;
      e.se = qm.se;
      e.n_samples = qm.n_samples;
      break;
    case kBZero:
      e.mean = qp.mean + qm.mean;
      e.se = std::sqrt(qp.se * qp.se + qm.se * qm.se);
      e.n_samples = qp.n_samples;
      break;
    default:
      throw std::invalid_argument("induced_g_estimate: y0 not a B code");
  }
  e.seed = qp.seed;
  e.burn_in = qp.burn_in;
  return e;
}

}  // namespace

MeasureEstimate induced_g_estimate(int y0, const FactorWindow& y_tail,
                                   const CounterexampleSpec& cs) {
  if (y_tail.all_zero_head()) {
    // conditional law of the spin image given the all-zero head is exactly
    // nu_N^{+-}; both fiber weights come from the same sample stream
    CounterexampleSpec c2 = cs;
    c2.N = y_tail.n();
    const MeasureEstimate qp =
        q_expectation_nu(+1, c2.N, y_tail.tail_sign, c2);
    const MeasureEstimate qm =
        q_expectation_nu(-1, c2.N, y_tail.tail_sign, c2);
    return combine_for_symbol(y0, qp, qm);
  }
  if (y_tail.n() > 12)
    throw ResourceError(
        "induced_g_estimate: general heads are supported up to N = 12 "
        "(rejection)");
  return induced_g_estimate_rejection(y0, y_tail, cs, 6,
                                      2000000);
}

MeasureEstimate induced_g_estimate_rejection(int y0,
                                             const FactorWindow& y_tail,
                                             const CounterexampleSpec& cs,
                                             int horizon_extra,
                                             long long n_sims) {
  const int N = y_tail.n();
  if (N > 12) throw ResourceError("rejection estimate: head longer than 12");
  const PotentialSpec spec = cs.pot();
  const int L = 1 + N + horizon_extra;  // positions 0 .. L-1
  const int tsym = y_tail.tail_sign > 0 ? kPlusT : kMinusT;

  std::vector<double> w(L + 1), tailT(L + 1);
  for (int d = 1; d <= L; ++d) w[d] = std::pow(double(d), -spec.alpha);
  for (int d = 1; d <= L; ++d) tailT[d] = power_tail(spec.alpha, d);

  // value of the y0 fiber weight given the accepted suffix image
  auto fiber_value = [&](double s1) {
    // s1 = sum_{j>=1} alpha(x_j) j^-alpha from position 0
    const double qp = std::exp(spec.K + spec.beta * s1);
    const double qm = std::exp(spec.K - spec.beta * s1);
    switch (y0) {
      case kBPlusT:
        return 0.5 - qp;
      case kBMinusT:
        return 0.5 - qm;
      case kBZero:
        return qp + qm;
    }
    throw std::invalid_argument("rejection estimate: y0 not a B code");
  };

  Rng rng(cs.seed);
  long long accepted = 0;
  double sum = 0.0, sumsq = 0.0;
  std::vector<int> x(L);
  for (long long t = 0; t < n_sims; ++t) {
    // backward generation with early rejection at constrained positions
    bool ok = true;
    for (int n = L - 1; n >= 1 && ok; --n) {
      double s = y_tail.tail_sign * tailT[L - n];
      for (int j = 1; n + j < L; ++j) s += alpha_map(x[n + j]) * w[j];
      const double qp = std::exp(spec.K + spec.beta * s);
      const double qm = std::exp(spec.K - spec.beta * s);
      const double u = rng.uniform01();
      int sym;
      if (u < qp)
        sym = kPlus;
      else if (u < qp + qm)
        sym = kMinus;
      else if (u < qp + qm + (0.5 - qp))
        sym = kPlusT;
      else
        sym = kMinusT;
      x[n] = sym;
      const int pos = n - 1;  // index into y_tail (head at positions 1..N)
      const int want = pos < N ? y_tail.head[pos] : pi_map(tsym);
      if (pi_map(sym) != want) ok = false;
    }
    if (!ok) continue;
    // spin-weighted suffix sum seen from position 0: explicit x_1..x_{L-1},
    // completion from distance L on
    double s1 = y_tail.tail_sign * tailT[L];
    for (int j = 1; j <= L - 1; ++j) s1 += alpha_map(x[j]) * w[j];
    const double v = fiber_value(s1);
    sum += v;
    sumsq += v * v;
    ++accepted;
  }
  if (accepted < 2)
    throw std::runtime_error("rejection estimate: no accepted samples");
  MeasureEstimate e;
  e.mean = sum / double(accepted);
  const double var =
      (sumsq - sum * sum / double(accepted)) / double(accepted - 1);
  e.se = std::sqrt(var / double(accepted));
  e.n_samples = accepted;
  e.seed = cs.seed;
  return e;
}

GapResult gap_statistic(int N, const CounterexampleSpec& cs) {
  if (N > 512) throw ResourceError("gap_statistic: N > 512");
  GapResult r;
  r.plus = q_expectation_nu(+1, N, +1, cs);
  r.minus = q_expectation_nu(+1, N, -1, cs);
  r.delta.mean = r.plus.mean - r.minus.mean;
  r.delta.se = std::sqrt(r.plus.se * r.plus.se + r.minus.se * r.minus.se);
  r.delta.n_samples = r.plus.n_samples + r.minus.n_samples;
  r.delta.seed = cs.seed;
  r.delta.burn_in = r.plus.burn_in;
  return r;
}

}  // namespace gq
