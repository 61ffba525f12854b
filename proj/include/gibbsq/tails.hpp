#pragma once

#include <cstdint>
#include <vector>

namespace gq {

enum class BoundaryKind { AllPlus, AllMinus, Free, Fixed };

// Resolution of the tail [N, inf) of a one-sided spin configuration.
// AllPlus/AllMinus/Free are handled analytically; Fixed carries explicit
// symbols for positions [N, N+tail.size()) and is summed term by term.
struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::Free;
  std::vector<int> tail;  // Fixed only

  static BoundaryCondition all_plus() { return {BoundaryKind::AllPlus, {}}; }
  static BoundaryCondition all_minus() { return {BoundaryKind::AllMinus, {}}; }
  static BoundaryCondition free() { return {BoundaryKind::Free, {}}; }
  static BoundaryCondition fixed(std::vector<int> t) {
    return {BoundaryKind::Fixed, std::move(t)};
  }

  // +1 / -1 / 0 for the deterministic kinds; throws for Fixed.
  int sign() const;
  bool deterministic() const { return kind != BoundaryKind::Fixed; }
};

// sum_{j>=start} j^(-alpha), alpha > 1, start >= 1.
// Partial sum of 64 explicit terms plus an Euler-Maclaurin remainder;
// absolute error well below 1e-12 over alpha in (1, 4].
double power_tail(double alpha, long start);

// s * power_tail(alpha, start) with s = +1/-1/0 for AllPlus/AllMinus/Free.
// Fixed boundaries are summed explicitly elsewhere; passing one here is an
// argument error.
double tail_sum(const BoundaryCondition& bc, long start, double alpha);

}  // namespace gq
