#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gibbsq/estimate.hpp"
#include "gibbsq/potential.hpp"
#include "gibbsq/transfer.hpp"

namespace gq {

// Four-symbol space codes: (-1~, -1, +1, +1~) = (-2, -1, +1, +2).
// Three-symbol factor codes: (-1~, 0, +1~) = (-1, 0, +1).
// The coding keeps both coordinatewise orders total and makes the two
// coordinate maps monotone.
inline constexpr int kPlus = +1, kMinus = -1, kPlusT = +2, kMinusT = -2;
inline constexpr int kBZero = 0, kBPlusT = +1, kBMinusT = -1;

// spin image: +-1,+-1~ -> +-1
int alpha_map(int a);
std::vector<int> alpha_map_window(std::span<const int> w);

// factor image: +-1 -> 0, +-1~ -> +-1~
int pi_map(int a);
std::vector<int> pi_map_window(std::span<const int> w);

// Four-symbol transition function built from q:
//   g(x0, tail) = q(alpha(x0 tail))        for x0 = +-1
//   g(x0, tail) = 1/2 - q(alpha(x0 tail))  for x0 = +-1~
// The four values sum to 1 identically; all are positive when K comes from
// choose_K. The explicit tail is completed by completion_sign beyond its end.
double g_eval(int x0, std::span<const int> tail, const PotentialSpec& spec,
              int completion_sign = +1);

// g as a cylinder function (first word symbol is x0).
CylinderFn make_g_cylinder_fn(const PotentialSpec& spec,
                              int completion_sign = +1);

// Backward generation of the chain with transition g: x_n drawn from
// g(. , x_{(n+1)}) for n = length-1, ..., 0, with the declared completion
// beyond the window end. Output window over the four-symbol alphabet.
std::vector<int> simulate_g_chain(const PotentialSpec& spec, int length,
                                  std::uint64_t seed, int completion_sign = +1);

std::vector<std::vector<int>> simulate_g_chains(const PotentialSpec& spec,
                                                int length, int count,
                                                std::uint64_t master_seed,
                                                int completion_sign = +1);

// Experiment parameters for the renormalization counterexample.
struct CounterexampleSpec {
  double alpha = 2.0;
  double beta = 1.0;
  double K = 0.0;  // expected from choose_K
  int N = 8;
  long long sweeps = 100000;
  long long burn_in = -1;  // < 0: default 10 N
  std::uint64_t seed = 1;
  int chains = 4;
  int batches_per_chain = 8;

  static CounterexampleSpec make(double beta, double alpha, int N,
                                 long long sweeps, std::uint64_t seed);
  PotentialSpec pot() const { return PotentialSpec{alpha, beta, K, 256}; }
  long long effective_burn_in() const {
    return burn_in >= 0 ? burn_in : 10LL * N;
  }
};

// Factor-space input: three-symbol head on [0, N) followed by a constant
// +-1~ tail. zero_n(N, sign) is the distinguished input with all-zero head.
struct FactorWindow {
  std::vector<int> head;  // B codes
  int tail_sign = +1;

  static FactorWindow zero_n(int N, int sign);
  bool all_zero_head() const;
  int n() const { return static_cast<int>(head.size()); }
};

// E[q(s, u)] under nu_N^{sign}: u is sampled on the window, the boundary
// tail of q is analytic. s is the spin prepended at the origin.
MeasureEstimate q_expectation_nu(int s, int N, int sign,
                                 const CounterexampleSpec& cs);

// exact-enumeration counterpart (N <= 20)
double exact_q_expectation(int s, int N, int sign, const PotentialSpec& spec);

// Estimate of the induced transition probability g~(y0 | y_tail).
// All-zero heads use the identification of the conditional law with
// nu_N^{+-}; general heads fall back to rejection sampling from the g-chain
// (test-oracle path, head length <= 12).
MeasureEstimate induced_g_estimate(int y0, const FactorWindow& y_tail,
                                   const CounterexampleSpec& cs);

// Rejection-sampling estimate from simulated chains; horizon_extra is the
// explicit +-1~ run conditioned beyond the head. Returns the same target as
// induced_g_estimate for the same (y0, y_tail).
MeasureEstimate induced_g_estimate_rejection(int y0,
                                             const FactorWindow& y_tail,
                                             const CounterexampleSpec& cs,
                                             int horizon_extra,
                                             long long n_sims);

// Delta_N = E[q(+1,u)] under nu_N^+ minus the same under nu_N^-, with
// combined standard error. A positive separation certifies
// g~(+1~, 0_N^+) != g~(+1~, 0_N^-) at this N.
struct GapResult {
  MeasureEstimate delta, plus, minus;
};

GapResult gap_statistic(int N, const CounterexampleSpec& cs);

}  // namespace gq
