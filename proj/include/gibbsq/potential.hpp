#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "gibbsq/symbols.hpp"
#include "gibbsq/tails.hpp"

namespace gq {

// Parameters of the long-range pair potential: interaction weight
// beta / |i-j|^alpha plus an additive per-site constant K.
// R bounds the number of explicit tail terms used for Fixed boundaries.
struct PotentialSpec {
  double alpha = 2.0;  // decay exponent, > 1
  double beta = 1.0;   // inverse temperature, >= 0
  double K = 0.0;      // additive constant
  int R = 256;         // explicit-tail horizon for Fixed boundaries

  void validate() const;
};

// K = -(ln 2 + beta * sum_{j>=1} j^-alpha + 1e-3), which pins
// sup_u q(u) = (1/2) e^{-1e-3} strictly below 1/2.
double choose_K(double beta, double alpha);

// One-point potential of the window u = (u_0, ..., u_{N-1}), spins +-1:
//   K + beta * u_0 * ( sum_{j=1}^{N-1} u_j j^-alpha  +  tail(bc) )
// Deterministic boundaries use the analytic tail from j = N on; Fixed
// boundaries add explicit terms for up to spec.R tail symbols and truncate
// (dropped mass is at most beta * power_tail(alpha, N + R) in absolute value).
double phi0_eval(std::span<const int> u, const PotentialSpec& spec,
                 const BoundaryCondition& bc);

// exp(phi0). Throws std::range_error when |phi0| exceeds cap.
double q_eval(std::span<const int> u, const PotentialSpec& spec,
              const BoundaryCondition& bc, double cap = 700.0);

// Analytic bound on var_n of log q for n >= 1:  2 beta sum_{j>=n} j^-alpha.
// Pairs agreeing on [0,n) can differ at coordinate n and beyond, so the tail
// starts at j = n; the coarser envelope 2 beta / n (alpha = 2) bounds the
// sum from n+1 instead and sits slightly below this value.
double variation_bound(int n, const PotentialSpec& spec);

// Lower bound on var_n f by randomized search: max |f(x) - f(y)| over
// sampled pairs sharing the prefix [0,n), plus the deterministic extremal
// pair (all-max vs all-min suffix). f sees whole windows of window_len
// symbols from the given alphabet.
double empirical_variation(
    const std::function<double(std::span<const int>)>& f, const Alphabet& a,
    int window_len, int n, int trials, std::uint64_t seed);

// phi0 on fixed-length windows with precomputed weights; equal to phi0_eval
// up to rounding. Meant for hot loops (certificates, variation scans).
std::function<double(std::span<const int>)> make_phi0_functional(
    const PotentialSpec& spec, int window_len, const BoundaryCondition& bc);

}  // namespace gq
