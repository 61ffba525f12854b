#include "gibbsq/tails.hpp"

#include <cmath>
#include <stdexcept>

namespace gq {

int BoundaryCondition::sign() const {
  switch (kind) {
    case BoundaryKind::AllPlus:
      return +1;
    case BoundaryKind::AllMinus:
      return -1;
    case BoundaryKind::Free:
      return 0;
    case BoundaryKind::Fixed:
      break;
  }
  throw std::invalid_argument("BoundaryCondition::sign: Fixed has no sign");
}

double power_tail(double alpha, long start) {
  if (!(alpha > 1.0)) throw std::invalid_argument("power_tail: alpha <= 1");
  if (start < 1) throw std::invalid_argument("power_tail: start < 1");

  const long m = start + 64;  // explicit terms [start, m)
  double s = 0.0;
  for (long j = m - 1; j >= start; --j) s += std::pow(double(j), -alpha);

  // Euler-Maclaurin remainder of sum_{j>=m} j^-alpha.
  const double x = double(m);
  const double fm = std::pow(x, -alpha);
  double tail = std::pow(x, 1.0 - alpha) / (alpha - 1.0);  // integral
  tail += 0.5 * fm;
  tail += alpha * fm / x / 12.0;
  tail -= alpha * (alpha + 1.0) * (alpha + 2.0) * fm / (x * x * x) / 720.0;
  tail += alpha * (alpha + 1.0) * (alpha + 2.0) * (alpha + 3.0) *
          (alpha + 4.0) * fm / (x * x * x * x * x) / 30240.0;
  return s + tail;
}

double tail_sum(const BoundaryCondition& bc, long start, double alpha) {
  if (bc.kind == BoundaryKind::Fixed)
    throw std::invalid_argument(
        "tail_sum: Fixed boundary is summed explicitly, not analytically");
  const int s = bc.sign();
  if (s == 0) return 0.0;
  return s * power_tail(alpha, start);
}

}  // namespace gq
