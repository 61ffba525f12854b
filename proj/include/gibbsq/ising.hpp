#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "gibbsq/estimate.hpp"
#include "gibbsq/potential.hpp"
#include "gibbsq/rng.hpp"

namespace gq {

// Finite-volume state: spins on [0, N) plus a boundary condition resolving
// the tail [N, inf).
struct SpinWindow {
  std::vector<int> spins;  // +-1
  BoundaryCondition bc;

  int n() const { return static_cast<int>(spins.size()); }
};

// phi_Lambda for Lambda = sites (a subset of [0, N)): per-site constant K,
// pair terms with at least one endpoint in Lambda, and tail terms resolved
// by frozen.bc. `assignment` overrides frozen.spins on `sites`.
double subset_potential(std::span<const int> assignment,
                        std::span<const int> sites, const SpinWindow& frozen,
                        const PotentialSpec& spec);

// log Z_Lambda by enumeration over the 2^|sites| assignments; |sites| <= 25.
double log_local_partition(std::span<const int> sites,
                           const SpinWindow& frozen,
                           const PotentialSpec& spec);
double local_partition(std::span<const int> sites, const SpinWindow& frozen,
                       const PotentialSpec& spec);

// exp(phi_Lambda(x)) / Z_Lambda for the given assignment on sites.
double gibbs_prob(std::span<const int> assignment, std::span<const int> sites,
                  const SpinWindow& frozen, const PotentialSpec& spec);

// Full distribution on {-1,+1}^N given the boundary condition; N <= 20.
// State index encodes spins bitwise: bit i set <=> u_i = +1.
std::vector<double> exact_marginals(int N, const BoundaryCondition& bc,
                                    const PotentialSpec& spec);

// Decode a state index into +-1 spins.
void decode_state(std::uint32_t idx, int N, std::vector<int>& out);

// sum_x p(x) f(x) over the full state space of exact_marginals.
double exact_expectation(const std::vector<double>& probs, int N,
                         const std::function<double(std::span<const int>)>& f);

// Single-site heat-bath dynamics targeting the finite-volume Gibbs measure.
// Per-site local fields are cached and updated on each accepted flip.
class HeatBathChain {
 public:
  HeatBathChain(int N, const PotentialSpec& spec, const BoundaryCondition& bc,
                std::uint64_t seed);

  void sweep();  // one deterministic left-to-right pass
  const std::vector<int>& spins() const { return spins_; }
  const BoundaryCondition& bc() const { return bc_; }
  int n() const { return n_; }
  double magnetization() const;

 private:
  int n_;
  PotentialSpec spec_;
  BoundaryCondition bc_;
  std::vector<double> w_;      // w_[d] = d^-alpha
  std::vector<double> h_;      // boundary field per site
  std::vector<int> spins_;
  std::vector<double> field_;  // sum_{j != i} s_j w_|i-j| + h_i
  Rng rng_;

  void rebuild_fields();
};

// Sample stream for nu_N^{+/-}: heat-bath chain with AllPlus/AllMinus
// boundary, burn_in sweeps discarded. Reproducible from the seed.
class NuPMStream {
 public:
  NuPMStream(int N, int sign, const PotentialSpec& spec, long long sweeps,
             long long burn_in, std::uint64_t seed);

  bool next();  // advance one post-burn-in sweep; false once exhausted
  const std::vector<int>& spins() const { return chain_.spins(); }
  const BoundaryCondition& bc() const { return chain_.bc(); }
  long long produced() const { return produced_; }
  long long total() const { return total_; }
  std::uint64_t seed() const { return seed_; }
  long long burn_in() const { return burn_in_; }

 private:
  HeatBathChain chain_;
  long long total_;
  long long produced_ = 0;
  std::uint64_t seed_;
  long long burn_in_;
};

// Batch-means estimate of E[f] over the remainder of the stream.
MeasureEstimate estimate_expectation(
    const std::function<double(std::span<const int>)>& f, NuPMStream& stream,
    int batches = 32);

// Multi-chain estimate: `chains` independent streams with derived seeds,
// batches pooled in chain order. Chains run on the worker pool.
MeasureEstimate estimate_nu_pm(
    int N, int sign, const PotentialSpec& spec,
    const std::function<double(std::span<const int>)>& f,
    long long sweeps_per_chain, long long burn_in, std::uint64_t master_seed,
    int chains = 4, int batches_per_chain = 8);

}  // namespace gq
