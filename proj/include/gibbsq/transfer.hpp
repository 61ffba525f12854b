#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gibbsq/symbols.hpp"

namespace gq {

// A function on depth-d cylinders: one value per word in alphabet^d,
// word index is x0-major.
struct CylinderTable {
  Alphabet alphabet;
  int depth;
  std::vector<double> vals;

  static CylinderTable constant(const Alphabet& a, int depth, double v);
  std::size_t index(std::span<const int> word) const;
  double at(std::span<const int> word) const { return vals[index(word)]; }
  void word_at(std::size_t idx, std::vector<int>& out) const;
};

// g (or any cylinder function) evaluated on an explicit finite prefix; the
// tail completion beyond the prefix is the callee's declared convention.
using CylinderFn = std::function<double(std::span<const int>)>;

// (L_g f)(w) = sum_a g(a.w) f(a.w) for w of depth d-1; f has depth d >= 1.
CylinderTable transfer_apply(const CylinderTable& f, const CylinderFn& g);

// Stationarity residual: for each depth-d word w,
//   mean over chains/positions of  1{x at p matches w}
//                                - g(w_0, x_{(p+1)}) 1{x at p+1 matches w_(1)}
// For samples generated by the chain with transition g both terms have the
// same expectation, so the residual is zero-mean regardless of burn-in.
// Standard errors come from treating each window as one replicate.
struct ResidualReport {
  double max_abs = 0.0;
  double max_sigmas = 0.0;
  std::size_t argmax_word = 0;
};

ResidualReport gmeasure_residual(const CylinderFn& g, const Alphabet& a,
                                 const std::vector<std::vector<int>>& windows,
                                 int depth, int usable_len);

}  // namespace gq
