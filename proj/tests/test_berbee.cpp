#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gibbsq/berbee.hpp"
#include "gibbsq/rng.hpp"

using namespace gq;

namespace {

// dense row-vector iteration, the slow reference for the prefix-sum stepper
double dense_absorption(const BerbeeChain& c, long long N, int k) {
  const int n = c.k_max + 1;
  std::vector<double> v(n, 0.0), nv(n);
  v[k] = 1.0;
  for (long long t = 0; t < N; ++t) {
    std::fill(nv.begin(), nv.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      if (v[i] == 0.0) continue;
      for (int j = 0; j < n; ++j) nv[j] += v[i] * c.at(i, j);
    }
    v.swap(nv);
  }
  return v[0];
}

}  // namespace

TEST_CASE("variation sequence helpers") {
  const auto r = VariationSequence::from_function(
      [](int n) { return 1.0 / n; }, 10);
  CHECK(r.size() == 10);
  CHECK(r.r_k(1) == 1.0);
  CHECK(r.r_k(0) == 1.0);  // r_0 extends as r_1
  CHECK(r.r_k(10) == doctest::Approx(0.1));
  CHECK(r.non_increasing());
  CHECK_THROWS_AS(r.r_k(11), std::invalid_argument);

  VariationSequence bumpy{{0.5, 0.9, 0.2, 0.3}};
  CHECK_FALSE(bumpy.non_increasing());
  const auto env = bumpy.monotone_envelope();
  CHECK(env.r == std::vector<double>{0.9, 0.9, 0.3, 0.3});
  CHECK(env.non_increasing());
}

TEST_CASE("matrix construction") {
  SUBCASE("r = 0 is a deterministic countdown") {
    const auto r = VariationSequence::from_function([](int) { return 0.0; }, 9);
    const auto c = build_berbee_matrix(r, 8);
    CHECK(c.at(0, 0) == 1.0);
    for (int j = 1; j <= 8; ++j) CHECK(c.at(0, j) == 0.0);
    for (int i = 1; i <= 8; ++i) {
      CHECK(c.at(i, i - 1) == 1.0);
      for (int j = i; j <= 8; ++j) CHECK(c.at(i, j) == 0.0);
    }
  }
  SUBCASE("constant r") {
    const double cc = 0.8;
    const auto r = VariationSequence::from_function([&](int) { return cc; }, 9);
    const auto c = build_berbee_matrix(r, 8);
    for (int i = 1; i <= 8; ++i) {
      CHECK(c.at(i, i - 1) == doctest::Approx(std::exp(-cc)).epsilon(1e-15));
      for (int j = i; j <= 8; ++j) CHECK(c.at(i, j) == 0.0);
      CHECK(c.row_sum(i) == doctest::Approx(std::exp(-cc)));
    }
  }
  SUBCASE("r = 1/k row 2 matches hand computation") {
    const auto r = VariationSequence::from_function(
        [](int n) { return 1.0 / n; }, 9);
    const auto c = build_berbee_matrix(r, 8);
    CHECK(std::abs(c.at(2, 1) - std::exp(-1.0)) < 1e-15);
    CHECK(std::abs(c.at(2, 2) -
                   (std::exp(-1.0 / 3.0) - std::exp(-1.0 / 2.0))) < 1e-15);
    CHECK(std::abs(c.at(2, 3) -
                   (std::exp(-1.0 / 4.0) - std::exp(-1.0 / 3.0))) < 1e-15);
    CHECK(c.at(2, 0) == 0.0);
    for (int i = 0; i <= 8; ++i) {
      CHECK(c.row_sum(i) <= 1.0 + 1e-12);
      for (int j = 0; j <= 8; ++j) CHECK(c.at(i, j) >= 0.0);
    }
  }
  SUBCASE("monotone envelope is required") {
    VariationSequence inc{{0.1, 0.2, 0.3, 0.4, 0.5}};
    CHECK_THROWS_WITH_AS(build_berbee_matrix(inc, 4),
                         doctest::Contains("monotone envelope"),
                         std::invalid_argument);
    CHECK_THROWS_AS(
        build_berbee_matrix(VariationSequence{{0.5, 0.4}}, 4),
        std::invalid_argument);  // too short
  }
}

TEST_CASE("absorption probability") {
  SUBCASE("countdown absorbs exactly at N = k") {
    const auto r = VariationSequence::from_function([](int) { return 0.0; }, 12);
    const auto c = build_berbee_matrix(r, 10);
    CHECK(absorption_probability(c, 2, 3) == 0.0);
    CHECK(absorption_probability(c, 3, 3) == 1.0);
    CHECK(absorption_probability(c, 50, 3) == 1.0);
    CHECK(absorption_probability(c, 0, 0) == 1.0);
  }
  SUBCASE("constant r has closed form e^{-rk}") {
    const auto r = VariationSequence::from_function([](int) { return 1.0; }, 40);
    const auto c = build_berbee_matrix(r, 32);
    CHECK(std::abs(absorption_probability(c, 4000, 3) - std::exp(-3.0)) <
          1e-10);
    CHECK(std::abs(absorption_probability(c, 4000, 1) - std::exp(-1.0)) <
          1e-10);
  }
  SUBCASE("prefix-sum stepping equals dense iteration") {
    const auto r = VariationSequence::from_function(
        [](int n) { return 0.7 / std::sqrt(double(n)); }, 13);
    const auto c = build_berbee_matrix(r, 12);
    for (int k : {1, 4, 9})
      for (long long N : {1LL, 5LL, 25LL})
        CHECK(std::abs(absorption_probability(c, N, k) -
                       dense_absorption(c, N, k)) < 1e-12);
  }
  SUBCASE("monotone in N") {
    const auto r = VariationSequence::from_function(
        [](int n) { return 1.0 / n; }, 64);
    const auto c = build_berbee_matrix(r, 50);
    double prev = 0.0;
    for (long long N : {1LL, 3LL, 10LL, 40LL, 200LL, 1000LL}) {
      const double v = absorption_probability(c, N, 5);
      CHECK(v >= prev - 1e-15);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
  SUBCASE("argument checks") {
    const auto r = VariationSequence::from_function([](int) { return 0.1; }, 6);
    const auto c = build_berbee_matrix(r, 5);
    CHECK_THROWS_AS(absorption_probability(c, 10, 6), std::invalid_argument);
    CHECK_THROWS_AS(absorption_probability(c, -1, 2), std::invalid_argument);
  }
}

TEST_CASE("mixing lower bound") {
  const auto r0 = VariationSequence::from_function([](int) { return 0.0; }, 12);
  const auto c0 = build_berbee_matrix(r0, 10);
  CHECK(mixing_lower_bound(c0, 5, 3) == 1.0);

  const auto r1 = VariationSequence::from_function([](int) { return 1.0; }, 12);
  const auto c1 = build_berbee_matrix(r1, 10);
  CHECK(std::abs(mixing_lower_bound(c1, 4000, 2) - std::exp(-4.0)) < 1e-10);

  // in [0,1], non-decreasing in N, non-increasing in k
  const auto r = VariationSequence::from_function(
      [](int n) { return 1.0 / n; }, 34);
  const auto c = build_berbee_matrix(r, 32);
  double prev_n = 0.0;
  for (long long N : {1LL, 10LL, 100LL, 1000LL}) {
    const double v = mixing_lower_bound(c, N, 4);
    CHECK(v >= prev_n - 1e-15);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev_n = v;
  }
  double prev_k = 2.0;
  for (int k : {1, 2, 4, 8, 16}) {
    const double v = mixing_lower_bound(c, 500, k);
    CHECK(v <= prev_k + 1e-15);
    prev_k = v;
  }
}

TEST_CASE("Berbee condition partial sums") {
  SUBCASE("r = 0 grows linearly") {
    const auto r = VariationSequence::from_function([](int) { return 0.0; }, 32);
    const auto s = berbee_condition_partial_sums(r, 32);
    for (int n = 1; n <= 32; ++n) CHECK(s[n - 1] == doctest::Approx(double(n)));
  }
  SUBCASE("r = 1/n grows like log M") {
    const int M = 20000;
    const auto r = VariationSequence::from_function(
        [](int n) { return 1.0 / n; }, M);
    const auto d = partial_sum_growth(berbee_condition_partial_sums(r, M));
    CHECK(d.r2 > 0.99);
    CHECK(d.log_slope > 0.3);  // ~ e^{-gamma} = 0.561
    CHECK(d.log_slope < 0.8);
  }
  SUBCASE("r = 2/n flattens") {
    const int M = 20000;
    const auto r = VariationSequence::from_function(
        [](int n) { return 2.0 / n; }, M);
    const auto s = berbee_condition_partial_sums(r, M);
    const auto d = partial_sum_growth(s);
    CHECK(d.last_quarter_fraction < 0.01);
    // cap: e^{-2 gamma} zeta(2) plus a little
    CHECK(s.back() < 0.7);
  }
}

TEST_CASE("Monte Carlo chain simulation agrees with the matrix") {
  Rng rng(2024);
  for (int c = 0; c < 3; ++c) {
    const double scale = 0.3 + rng.uniform01();
    const auto r = VariationSequence::from_function(
        [&](int n) { return scale / n; }, 40);
    const auto chain = build_berbee_matrix(r, 30);
    const int k = 2 + int(rng.uniform_below(5));
    const long long N = 10 + long(rng.uniform_below(30));
    const double exact = absorption_probability(chain, N, k);
    double se = 0.0;
    const double mc = simulate_absorption(chain, N, k, 400000, 99 + c, &se);
    CHECK(std::abs(mc - exact) <= 3.5 * se);
  }
}
