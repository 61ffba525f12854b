#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "gibbsq/factor.hpp"
#include "gibbsq/potential.hpp"
#include "gibbsq/rng.hpp"
#include "gibbsq/transfer.hpp"

using namespace gq;

TEST_CASE("cylinder table indexing") {
  const Alphabet a = Alphabet::four_state();
  CylinderTable t = CylinderTable::constant(a, 3, 0.0);
  CHECK(t.vals.size() == 64);
  std::vector<int> w;
  for (std::size_t i = 0; i < t.vals.size(); ++i) {
    t.word_at(i, w);
    CHECK(t.index(w) == i);
  }
  const std::vector<int> bad = {0, 0, 0};
  CHECK_THROWS_AS(t.index(bad), std::invalid_argument);
}

TEST_CASE("transfer_apply preserves constants for normalized g") {
  const PotentialSpec spec{2.0, 0.8, choose_K(0.8, 2.0), 64};
  const auto g = make_g_cylinder_fn(spec, +1);
  const Alphabet a = Alphabet::four_state();
  CylinderTable f = CylinderTable::constant(a, 4, 1.0);
  for (int d = 4; d >= 1; --d) {
    CHECK(f.depth == d);
    f = transfer_apply(f, g);
    for (double v : f.vals) CHECK(std::abs(v - 1.0) < 1e-12);
  }
  CHECK(f.depth == 0);
  CHECK_THROWS_AS(transfer_apply(f, g), std::invalid_argument);
}

TEST_CASE("transfer_apply with the fair-coin g") {
  const Alphabet spins = Alphabet::spins();
  const CylinderFn g = [](std::span<const int>) { return 0.5; };
  CylinderTable f = CylinderTable::constant(spins, 1, 0.0);
  const std::vector<int> plus = {+1};
  f.vals[f.index(plus)] = 1.0;  // indicator of x0 = +1
  const auto out = transfer_apply(f, g);
  CHECK(out.depth == 0);
  CHECK(std::abs(out.vals[0] - 0.5) < 1e-15);
}

TEST_CASE("iterated transfer on indicators matches short-horizon simulation") {
  const PotentialSpec spec{2.0, 1.0, choose_K(1.0, 2.0), 64};
  const auto g = make_g_cylinder_fn(spec, +1);
  const Alphabet a = Alphabet::four_state();
  const int depth = 2;
  const long long sims = 400000;

  // exact law of the horizon-2 chain: iterate L_g on each indicator
  std::map<std::pair<int, int>, double> predicted;
  for (int s0 : a.symbols)
    for (int s1 : a.symbols) {
      CylinderTable f = CylinderTable::constant(a, depth, 0.0);
      const std::vector<int> w = {s0, s1};
      f.vals[f.index(w)] = 1.0;
      CylinderTable t = transfer_apply(transfer_apply(f, g), g);
      predicted[{s0, s1}] = t.vals[0];
    }
  double total = 0.0;
  for (const auto& [k, v] : predicted) total += v;
  CHECK(std::abs(total - 1.0) < 1e-12);

  std::map<std::pair<int, int>, long long> counts;
  for (long long t = 0; t < sims; ++t) {
    const auto x = simulate_g_chain(spec, depth, derive_seed(404, t), +1);
    counts[{x[0], x[1]}] += 1;
  }
  for (const auto& [key, p] : predicted) {
    const double phat = double(counts[key]) / double(sims);
    const double se = std::sqrt(p * (1.0 - p) / double(sims));
    CHECK(std::abs(phat - p) <= 3.5 * se + 1e-9);
  }
}

TEST_CASE("gmeasure_residual") {
  const Alphabet a = Alphabet::four_state();

  SUBCASE("iid uniform chain with constant g = 1/4") {
    const CylinderFn g = [](std::span<const int>) { return 0.25; };
    Rng rng(5);
    std::vector<std::vector<int>> windows(64);
    for (auto& w : windows) {
      w.resize(400);
      for (auto& s : w) s = a.symbols[rng.uniform_below(4)];
    }
    const auto rep = gmeasure_residual(g, a, windows, 2, 360);
    CHECK(rep.max_sigmas < 4.0);
  }

  SUBCASE("the g-chain passes, a mismatched sample fails") {
    const PotentialSpec spec{2.0, 1.5, choose_K(1.5, 2.0), 64};
    const auto g = make_g_cylinder_fn(spec, +1);
    const auto windows = simulate_g_chains(spec, 360, 64, 2717, +1);
    const auto rep = gmeasure_residual(g, a, windows, 3, 300);
    CHECK(rep.max_sigmas < 4.0);

    // negative control: iid uniform symbols are not stationary for this g
    Rng rng(6);
    std::vector<std::vector<int>> wrong(64);
    for (auto& w : wrong) {
      w.resize(360);
      for (auto& s : w) s = a.symbols[rng.uniform_below(4)];
    }
    const auto bad = gmeasure_residual(g, a, wrong, 3, 300);
    CHECK(bad.max_sigmas > 5.0);
  }

  SUBCASE("argument checks") {
    const CylinderFn g = [](std::span<const int>) { return 0.25; };
    std::vector<std::vector<int>> windows(4, std::vector<int>(50, +1));
    CHECK_THROWS_AS(gmeasure_residual(g, a, windows, 2, 40),
                    std::invalid_argument);  // too few chains
    std::vector<std::vector<int>> deep(24, std::vector<int>(50, +1));
    CHECK_THROWS_AS(gmeasure_residual(g, a, deep, 7, 40),
                    std::invalid_argument);  // depth budget
  }
}
