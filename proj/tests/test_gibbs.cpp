#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gibbsq/errors.hpp"
#include "gibbsq/ising.hpp"

using namespace gq;

namespace {

const PotentialSpec kSpec{2.0, 1.0, 0.0, 64};

double direct_marginal_sum(int N, const BoundaryCondition& bc,
                           const PotentialSpec& spec, std::uint32_t idx) {
  // naive O(4^?) free oracle: recompute the weight of idx from scratch
  std::vector<int> u;
  decode_state(idx, N, u);
  std::vector<int> sites(N);
  for (int i = 0; i < N; ++i) sites[i] = i;
  SpinWindow frozen{std::vector<int>(N, +1), bc};
  double z = 0.0;
  std::vector<int> v;
  for (std::uint32_t s = 0; s < (std::uint32_t(1) << N); ++s) {
    decode_state(s, N, v);
    z += std::exp(subset_potential(v, sites, frozen, spec));
  }
  return std::exp(subset_potential(u, sites, frozen, spec)) / z;
}

}  // namespace

TEST_CASE("local_partition basics") {
  SUBCASE("single site, beta = 0") {
    const PotentialSpec spec{2.0, 0.0, -0.7, 64};
    SpinWindow frozen{{+1, -1, +1}, BoundaryCondition::free()};
    const std::vector<int> sites = {1};
    CHECK(std::abs(local_partition(sites, frozen, spec) -
                   2.0 * std::exp(-0.7)) < 1e-13);
  }
  SUBCASE("single free site with no neighbors") {
    SpinWindow frozen{{+1}, BoundaryCondition::free()};
    const std::vector<int> sites = {0};
    CHECK(std::abs(local_partition(sites, frozen, kSpec) - 2.0) < 1e-13);
  }
  SUBCASE("two free sites") {
    SpinWindow frozen{{+1, +1}, BoundaryCondition::free()};
    const std::vector<int> sites = {0, 1};
    const double expect = 2.0 * std::exp(1.0) + 2.0 * std::exp(-1.0);
    CHECK(std::abs(local_partition(sites, frozen, kSpec) - expect) < 1e-12);
  }
  SUBCASE("budget") {
    SpinWindow frozen{std::vector<int>(26, +1), BoundaryCondition::free()};
    std::vector<int> sites(26);
    for (int i = 0; i < 26; ++i) sites[i] = i;
    CHECK_THROWS_AS(local_partition(sites, frozen, kSpec), ResourceError);
  }
  SUBCASE("site validation") {
    SpinWindow frozen{{+1, +1}, BoundaryCondition::free()};
    const std::vector<int> bad = {0, 0};
    CHECK_THROWS_AS(local_partition(bad, frozen, kSpec),
                    std::invalid_argument);
    const std::vector<int> oob = {2};
    CHECK_THROWS_AS(local_partition(oob, frozen, kSpec),
                    std::invalid_argument);
  }
}

TEST_CASE("gibbs_prob") {
  SUBCASE("beta = 0 single site is a fair coin") {
    const PotentialSpec spec{2.0, 0.0, 0.3, 64};
    SpinWindow frozen{{+1, -1}, BoundaryCondition::free()};
    const std::vector<int> sites = {0};
    const std::vector<int> plus = {+1};
    CHECK(std::abs(gibbs_prob(plus, sites, frozen, spec) - 0.5) < 1e-14);
  }
  SUBCASE("plus probability increases with beta under plus neighbors") {
    double prev = 0.0;
    for (double beta : {0.2, 0.6, 1.2, 2.5, 5.0}) {
      const PotentialSpec spec{2.0, beta, 0.0, 64};
      SpinWindow frozen{{+1, +1, +1, +1}, BoundaryCondition::all_plus()};
      const std::vector<int> sites = {1};
      const std::vector<int> plus = {+1};
      const double p = gibbs_prob(plus, sites, frozen, spec);
      CHECK(p > prev);
      prev = p;
    }
    CHECK(prev > 0.99);
  }
  SUBCASE("sums to one over assignments, random cases") {
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
      const int N = 3 + int(rng.uniform_below(6));
      const int m = 1 + int(rng.uniform_below(3));
      std::vector<int> sites;
      while (static_cast<int>(sites.size()) < m) {
        const int s = int(rng.uniform_below(N));
        bool dup = false;
        for (int x : sites) dup |= (x == s);
        if (!dup) sites.push_back(s);
      }
      std::vector<int> spins(N);
      for (auto& s : spins) s = rng.pm1();
      const auto bc = t % 3 == 0   ? BoundaryCondition::all_plus()
                      : t % 3 == 1 ? BoundaryCondition::all_minus()
                                   : BoundaryCondition::free();
      SpinWindow frozen{spins, bc};
      const PotentialSpec spec{1.5 + rng.uniform01(), 2.0 * rng.uniform01(),
                               rng.uniform01() - 0.5, 64};
      double total = 0.0;
      std::vector<int> assign(m);
      for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << m); ++mask) {
        for (int k = 0; k < m; ++k) assign[k] = (mask >> k) & 1u ? +1 : -1;
        total += gibbs_prob(assign, sites, frozen, spec);
      }
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("exact_marginals") {
  SUBCASE("N = 1, beta = 0") {
    const PotentialSpec spec{2.0, 0.0, 0.0, 64};
    const auto p = exact_marginals(1, BoundaryCondition::free(), spec);
    CHECK(std::abs(p[0] - 0.5) < 1e-14);
    CHECK(std::abs(p[1] - 0.5) < 1e-14);
  }
  SUBCASE("N = 2 free is proportional to (e, 1/e, 1/e, e)") {
    const auto p = exact_marginals(2, BoundaryCondition::free(), kSpec);
    const double z = 2.0 * std::exp(1.0) + 2.0 * std::exp(-1.0);
    // idx 0 = (-1,-1), 1 = (+1,-1), 2 = (-1,+1), 3 = (+1,+1)
    CHECK(std::abs(p[0] - std::exp(1.0) / z) < 1e-13);
    CHECK(std::abs(p[1] - std::exp(-1.0) / z) < 1e-13);
    CHECK(std::abs(p[2] - std::exp(-1.0) / z) < 1e-13);
    CHECK(std::abs(p[3] - std::exp(1.0) / z) < 1e-13);
  }
  SUBCASE("free boundary flip symmetry and normalization") {
    const auto p = exact_marginals(6, BoundaryCondition::free(), kSpec);
    double total = 0.0;
    for (std::uint32_t i = 0; i < 64; ++i) {
      total += p[i];
      CHECK(std::abs(p[i] - p[~i & 63u]) < 1e-12);
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
  SUBCASE("agrees with the direct oracle") {
    for (const auto& bc : {BoundaryCondition::all_plus(),
                           BoundaryCondition::fixed({-1, +1, -1})}) {
      const auto p = exact_marginals(5, bc, kSpec);
      for (std::uint32_t idx : {0u, 7u, 21u, 31u})
        CHECK(std::abs(p[idx] - direct_marginal_sum(5, bc, kSpec, idx)) <
              1e-11);
    }
  }
  SUBCASE("budget") {
    CHECK_THROWS_AS(exact_marginals(21, BoundaryCondition::free(), kSpec),
                    ResourceError);
  }
}

TEST_CASE("heat-bath dynamics") {
  SUBCASE("beta = 0 gives iid uniform spins") {
    const PotentialSpec spec{2.0, 0.0, 0.0, 64};
    HeatBathChain chain(16, spec, BoundaryCondition::free(), 99);
    double m = 0.0;
    const int sweeps = 20000;
    for (int t = 0; t < sweeps; ++t) {
      chain.sweep();
      m += chain.magnetization();
    }
    m /= sweeps;
    CHECK(std::abs(m) < 3.0 / std::sqrt(double(sweeps) * 16));
  }
  SUBCASE("same seed, same trajectory") {
    HeatBathChain a(12, kSpec, BoundaryCondition::all_plus(), 1234);
    HeatBathChain b(12, kSpec, BoundaryCondition::all_plus(), 1234);
    for (int t = 0; t < 50; ++t) {
      a.sweep();
      b.sweep();
    }
    CHECK(a.spins() == b.spins());
  }
  SUBCASE("empirical law approaches exact_marginals") {
    const int N = 6;
    const auto bc = BoundaryCondition::all_plus();
    const auto probs = exact_marginals(N, bc, kSpec);
    HeatBathChain chain(N, kSpec, bc, 555);
    for (int t = 0; t < 100; ++t) chain.sweep();
    std::vector<double> freq(1 << N, 0.0);
    const int sweeps = 200000;
    for (int t = 0; t < sweeps; ++t) {
      chain.sweep();
      std::uint32_t idx = 0;
      for (int i = 0; i < N; ++i)
        if (chain.spins()[i] > 0) idx |= 1u << i;
      freq[idx] += 1.0;
    }
    double tv = 0.0;
    for (int a = 0; a < (1 << N); ++a)
      tv += std::abs(freq[a] / sweeps - probs[a]);
    CHECK(tv / 2.0 < 0.02);
  }
}

TEST_CASE("nu_pm streams and estimators") {
  SUBCASE("constant observable has zero standard error") {
    NuPMStream s(6, +1, kSpec, 3000, 100, 42);
    const auto e = estimate_expectation([](std::span<const int>) { return 1.0; },
                                        s, 20);
    CHECK(e.mean == 1.0);
    CHECK(e.se == 0.0);
  }
  SUBCASE("stream preconditions") {
    CHECK_THROWS_AS(NuPMStream(6, +1, kSpec, 100, 100, 1),
                    std::invalid_argument);
    NuPMStream s(6, +1, kSpec, 130, 100, 1);
    CHECK_THROWS_AS(
        estimate_expectation([](std::span<const int>) { return 1.0; }, s, 32),
        std::invalid_argument);
  }
  SUBCASE("beta = 0 magnetization vanishes regardless of boundary sign") {
    const PotentialSpec spec{2.0, 0.0, 0.0, 64};
    for (int sign : {+1, -1}) {
      NuPMStream s(8, sign, spec, 20100, 100, 7);
      const auto e = estimate_expectation(
          [](std::span<const int> u) {
            double m = 0;
            for (int x : u) m += x;
            return m / double(u.size());
          },
          s, 32);
      CHECK(std::abs(e.mean) <= 3.0 * e.se + 1e-12);
    }
  }
  SUBCASE("E[u0] under nu_8^+ matches enumeration") {
    const int N = 8;
    const auto probs = exact_marginals(N, BoundaryCondition::all_plus(), kSpec);
    const double exact = exact_expectation(
        probs, N, [](std::span<const int> u) { return double(u[0]); });
    const auto est = estimate_nu_pm(
        N, +1, kSpec, [](std::span<const int> u) { return double(u[0]); },
        60000, 80, 2024, 4, 8);
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.se);
  }
  SUBCASE("boundary dominance of increasing observables") {
    for (double beta : {0.5, 1.0}) {
      const PotentialSpec spec{2.0, beta, 0.0, 64};
      const auto f = [](std::span<const int> u) { return double(u[0]); };
      const auto plus = estimate_nu_pm(10, +1, spec, f, 30000, 100, 31, 2, 16);
      const auto minus = estimate_nu_pm(10, -1, spec, f, 30000, 100, 77, 2, 16);
      const double se =
          std::sqrt(plus.se * plus.se + minus.se * minus.se);
      CHECK(plus.mean >= minus.mean - 3.0 * se);
    }
  }
  SUBCASE("estimates are reproducible bit for bit") {
    const auto f = [](std::span<const int> u) { return double(u[3]); };
    const auto a = estimate_nu_pm(9, +1, kSpec, f, 8000, 90, 5150, 3, 8);
    const auto b = estimate_nu_pm(9, +1, kSpec, f, 8000, 90, 5150, 3, 8);
    CHECK(a.mean == b.mean);
    CHECK(a.se == b.se);
    CHECK(a.n_samples == b.n_samples);
  }
}

TEST_CASE("batch means estimator") {
  CHECK_THROWS_AS(BatchMeans(10, 5), std::invalid_argument);
  BatchMeans bm(20, 2);
  for (int i = 0; i < 40; ++i) bm.add(double(i % 4));
  const auto e = bm.estimate();
  CHECK(std::abs(e.mean - 1.5) < 1e-14);
  CHECK(e.n_samples == 40);
}
