#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gibbsq/potential.hpp"
#include "gibbsq/rng.hpp"
#include "gibbsq/symbols.hpp"
#include "gibbsq/tails.hpp"

using namespace gq;

namespace {

// independent oracle: Kahan-compensated partial sum to 2e6 terms plus the
// integral bracket [S + int_{M}^inf, S + int_{M-1}^inf]
struct TailBracket {
  double lo, hi;
};

TailBracket tail_bracket(double alpha, long start) {
  const long M = 2000000;
  double s = 0.0, c = 0.0;
  for (long j = start; j < start + M; ++j) {
    const double y = std::pow(double(j), -alpha) - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  const double a = double(start + M);
  return {s + std::pow(a, 1.0 - alpha) / (alpha - 1.0),
          s + std::pow(a - 1.0, 1.0 - alpha) / (alpha - 1.0)};
}

}  // namespace

TEST_CASE("cylinder_match agrees on prefixes") {
  const Alphabet spins = Alphabet::spins();
  const Window x(spins, {+1, -1, +1});
  const Window y(spins, {+1, -1, -1});
  CHECK(cylinder_match(x, y, 2));
  CHECK_FALSE(cylinder_match(Window(spins, {+1, -1}), Window(spins, {-1, -1}), 1));
  CHECK(cylinder_match(x, y, 0));
  CHECK_THROWS_AS(cylinder_match(x, y, 4), std::invalid_argument);
}

TEST_CASE("config_leq coordinatewise order") {
  const Alphabet spins = Alphabet::spins();
  CHECK(config_leq(Window(spins, {-1, -1}), Window(spins, {+1, -1})));
  CHECK_FALSE(config_leq(Window(spins, {+1, -1}), Window(spins, {-1, +1})));
  const Window z(spins, {+1, -1, +1});
  CHECK(config_leq(z, z));
  CHECK_THROWS_AS(config_leq(z, Window(spins, {+1})), std::invalid_argument);
}

TEST_CASE("config_leq is a partial order on random triples") {
  const Alphabet a = Alphabet::four_state();
  Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    std::vector<int> vx(5), vy(5), vz(5);
    for (int i = 0; i < 5; ++i) {
      vx[i] = a.symbols[rng.uniform_below(4)];
      vy[i] = a.symbols[rng.uniform_below(4)];
      vz[i] = a.symbols[rng.uniform_below(4)];
    }
    const Window x(a, vx), y(a, vy), z(a, vz);
    CHECK(config_leq(x, x));  // reflexive
    if (config_leq(x, y) && config_leq(y, x)) CHECK(vx == vy);  // antisym
    if (config_leq(x, y) && config_leq(y, z)) CHECK(config_leq(x, z));
  }
}

TEST_CASE("shift drops the first coordinate") {
  const Alphabet spins = Alphabet::spins();
  const Window x(spins, {+1, -1, +1});
  CHECK(shift(x).values == std::vector<int>{-1, +1});
  CHECK(shift(Window(spins, {+1})).values.empty());
  CHECK(shift(shift(x)).values == std::vector<int>{+1});
  CHECK_THROWS_AS(shift(Window(spins, {})), std::invalid_argument);
}

TEST_CASE("window validates symbols against the alphabet") {
  CHECK_THROWS_AS(Window(Alphabet::spins(), {0}), std::invalid_argument);
  CHECK_THROWS_AS(Window(Alphabet{{1, 1}}, {1}), std::invalid_argument);
}

TEST_CASE("power_tail matches zeta(2) and the bracket oracle") {
  CHECK(std::abs(power_tail(2.0, 1) - std::numbers::pi * std::numbers::pi / 6.0) <
        1e-13);
  CHECK(std::abs(power_tail(2.0, 1) - 1.6449340668482264) < 1e-12);

  for (double alpha : {1.3, 1.5, 2.0, 2.5, 3.0}) {
    for (long start : {1L, 3L, 10L, 117L}) {
      const auto br = tail_bracket(alpha, start);
      const double v = power_tail(alpha, start);
      CHECK(v >= br.lo - 1e-12);
      CHECK(v <= br.hi + 1e-12);
    }
  }
  CHECK_THROWS_AS(power_tail(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(power_tail(2.0, 0), std::invalid_argument);
}

TEST_CASE("tail_sum signs") {
  CHECK(tail_sum(BoundaryCondition::free(), 1, 2.0) == 0.0);
  CHECK(std::abs(tail_sum(BoundaryCondition::all_plus(), 1, 2.0) -
                 1.6449340668482264) < 1e-12);
  CHECK(std::abs(tail_sum(BoundaryCondition::all_minus(), 3, 2.0) -
                 (-0.3949340668482264)) < 1e-12);
  CHECK_THROWS_AS(tail_sum(BoundaryCondition::fixed({+1}), 1, 2.0),
                  std::invalid_argument);
}

TEST_CASE("phi0_eval") {
  SUBCASE("beta = 0 reduces to K") {
    const PotentialSpec spec{2.0, 0.0, -1.0, 16};
    const std::vector<int> u = {+1, -1, +1};
    CHECK(phi0_eval(u, spec, BoundaryCondition::free()) == -1.0);
  }
  SUBCASE("single site with all-plus tail is the zeta tail") {
    const PotentialSpec spec{2.0, 1.0, 0.0, 16};
    const std::vector<int> u = {+1};
    CHECK(std::abs(phi0_eval(u, spec, BoundaryCondition::all_plus()) -
                   1.6449340668482264) < 1e-12);
  }
  SUBCASE("two sites, free tail") {
    const PotentialSpec spec{2.0, 1.0, 0.0, 16};
    const std::vector<int> u = {+1, -1};
    CHECK(phi0_eval(u, spec, BoundaryCondition::free()) ==
          doctest::Approx(-1.0).epsilon(1e-14));
  }
  SUBCASE("fixed tails sum explicitly") {
    const PotentialSpec spec{2.0, 1.0, 0.0, 16};
    const std::vector<int> u = {+1, -1};
    const auto bc = BoundaryCondition::fixed({-1, +1, +1});
    // explicit: -1/1 + (-1/4 + 1/9 + 1/16)
    const double expect = -1.0 - 0.25 + 1.0 / 9.0 + 1.0 / 16.0;
    CHECK(std::abs(phi0_eval(u, spec, bc) - expect) < 1e-14);
  }
  SUBCASE("fixed tail horizon R truncates") {
    PotentialSpec spec{2.0, 1.0, 0.0, 2};
    const std::vector<int> u = {+1};
    const auto bc = BoundaryCondition::fixed({+1, +1, +1, +1});
    CHECK(std::abs(phi0_eval(u, spec, bc) - (1.0 + 0.25)) < 1e-14);
  }
  SUBCASE("rejects non-spin values") {
    const PotentialSpec spec{2.0, 1.0, 0.0, 16};
    const std::vector<int> u = {2};
    CHECK_THROWS_AS(phi0_eval(u, spec, BoundaryCondition::free()),
                    std::invalid_argument);
  }
}

TEST_CASE("q_eval") {
  SUBCASE("beta 0 with K = -ln 2") {
    const PotentialSpec spec{2.0, 0.0, -std::log(2.0), 16};
    const std::vector<int> u = {+1};
    CHECK(std::abs(q_eval(u, spec, BoundaryCondition::free()) - 0.5) < 1e-15);
  }
  SUBCASE("choose_K pins the supremum just under 1/2") {
    const PotentialSpec spec{2.0, 1.0, choose_K(1.0, 2.0), 16};
    const std::vector<int> u = {+1};
    const double q = q_eval(u, spec, BoundaryCondition::all_plus());
    CHECK(q < 0.5);
    CHECK(std::abs(q - 0.5 * std::exp(-1e-3)) < 1e-12);
  }
  SUBCASE("monotone in the boundary for beta > 0") {
    const PotentialSpec spec{2.0, 0.7, 0.0, 16};
    const std::vector<int> u = {+1};
    CHECK(q_eval(u, spec, BoundaryCondition::all_plus()) >
          q_eval(u, spec, BoundaryCondition::all_minus()));
  }
  SUBCASE("overflow guard") {
    const PotentialSpec spec{2.0, 500.0, 0.0, 16};
    const std::vector<int> u = {+1};
    CHECK_THROWS_AS(q_eval(u, spec, BoundaryCondition::all_plus()),
                    std::range_error);
  }
}

TEST_CASE("choose_K") {
  CHECK(std::abs(choose_K(0.0, 2.0) - (-(std::log(2.0) + 1e-3))) < 1e-15);
  CHECK(std::abs(choose_K(1.0, 2.0) - (-2.3390812474081717)) < 1e-12);

  // randomized certification: q stays strictly below 1/2
  const double beta = 2.0;
  const PotentialSpec spec{2.0, beta, choose_K(beta, 2.0), 16};
  const auto phi =
      make_phi0_functional(spec, 65, BoundaryCondition::all_plus());
  Rng rng(11);
  std::vector<int> u(65);
  double sup = 0.0;
  for (int i = 1; i < 65; ++i) u[i] = +1;
  for (int t = 0; t < 10000; ++t) {
    u[0] = rng.pm1();
    sup = std::max(sup, std::exp(phi(u)));
    for (int i = 1; i < 65; ++i) u[i] = rng.pm1();
  }
  CHECK(sup < 0.5);
}

TEST_CASE("variation_bound") {
  const PotentialSpec spec0{2.0, 0.0, 0.0, 16};
  CHECK(variation_bound(5, spec0) == 0.0);

  const PotentialSpec spec{2.0, 1.0, 0.0, 16};
  // exact tail at n = 10: 2 sum_{j>=10} j^-2; the coarse 2 beta / n envelope
  // bounds the sum from n+1 and sits just below
  const double v10 = variation_bound(10, spec);
  CHECK(std::abs(v10 - 0.21033267136337128) < 1e-12);
  CHECK(v10 > 0.2);
  CHECK(2.0 * (power_tail(2.0, 11)) < 0.2);

  double prev = variation_bound(1, spec);
  for (int n = 2; n <= 200; ++n) {
    const double cur = variation_bound(n, spec);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("empirical_variation stays under the analytic bound") {
  const int len = 4096;
  const PotentialSpec spec{2.0, 1.0, choose_K(1.0, 2.0), 16};
  const auto phi = make_phi0_functional(spec, len, BoundaryCondition::all_plus());

  SUBCASE("beta = 0 is flat") {
    const PotentialSpec flat{2.0, 0.0, -0.3, 16};
    const auto f = make_phi0_functional(flat, 64, BoundaryCondition::free());
    CHECK(empirical_variation(f, Alphabet::spins(), 64, 3, 50, 5) == 0.0);
  }

  SUBCASE("positive, bounded, and monotone in depth") {
    double prev = 1e300;
    for (int n = 1; n <= 16; ++n) {
      const double emp =
          empirical_variation(phi, Alphabet::spins(), len, n, 100, 40 + n);
      CHECK(emp > 0.0);
      CHECK(emp <= variation_bound(n, spec));
      CHECK(emp <= prev + 1e-12);
      prev = emp;
    }
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(
        empirical_variation(phi, Alphabet::spins(), len, 0, 10, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        empirical_variation(phi, Alphabet::spins(), len, 1, 0, 1),
        std::invalid_argument);
  }
}

TEST_CASE("make_phi0_functional equals phi0_eval") {
  Rng rng(3);
  for (const auto bc : {BoundaryCondition::all_plus(),
                        BoundaryCondition::all_minus(),
                        BoundaryCondition::free()}) {
    const PotentialSpec spec{1.7, 0.9, -0.4, 16};
    const int len = 33;
    const auto f = make_phi0_functional(spec, len, bc);
    std::vector<int> u(len);
    for (int t = 0; t < 200; ++t) {
      for (auto& s : u) s = rng.pm1();
      CHECK(std::abs(f(u) - phi0_eval(u, spec, bc)) < 1e-13);
    }
  }
}
