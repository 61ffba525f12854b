#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>

#include "gibbsq/berbee.hpp"
#include "gibbsq/factor.hpp"
#include "gibbsq/harness.hpp"
#include "gibbsq/ising.hpp"
#include "gibbsq/potential.hpp"
#include "gibbsq/random_cluster.hpp"
#include "gibbsq/rng.hpp"

// Acceptance criteria. Each function is deterministic for a given seed and
// writes a short numeric summary (no timings) into its CheckResult.

namespace gq {

namespace {

const std::vector<double> kBetaGrid = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};

std::string fmt3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// criterion 1: sum_a g(a, x) = 1 to 1e-12 on 1e4 random tails per beta
CheckResult crit1(std::uint64_t seed) {
  const int tails = 10000, len = 96;
  double worst = 0.0;
  for (std::size_t bi = 0; bi < kBetaGrid.size(); ++bi) {
    const double beta = kBetaGrid[bi];
    const PotentialSpec spec{2.0, beta, choose_K(beta, 2.0), 256};
    // precomputed q(+-1, tail) on fixed-length windows, AllPlus completion
    const auto phi = make_phi0_functional(spec, len + 1,
                                          BoundaryCondition::all_plus());
    Rng rng(derive_seed(seed, bi));
    std::vector<int> u(len + 1);
    for (int t = 0; t < tails; ++t) {
      for (int i = 1; i <= len; ++i) u[i] = rng.pm1();
      u[0] = +1;
      const double qp = std::exp(phi(u));
      u[0] = -1;
      const double qm = std::exp(phi(u));
      const double total = qp + qm + (0.5 - qp) + (0.5 - qm);
      worst = std::max(worst, std::abs(total - 1.0));
    }
  }
  return {"g_normalization",
          worst <= 1e-12,
          "max |sum - 1| = " + fmt3(worst) + " over 7 betas x 10^4 tails"};
}

// criterion 2: sup q(+-1, u) < 1/2 strictly under choose_K
CheckResult crit2(std::uint64_t seed) {
  const int tails = 100000, len = 64;
  double sup = 0.0;
  bool all_below = true;
  for (std::size_t bi = 0; bi < kBetaGrid.size(); ++bi) {
    const double beta = kBetaGrid[bi];
    const PotentialSpec spec{2.0, beta, choose_K(beta, 2.0), 256};
    const auto phi = make_phi0_functional(spec, len + 1,
                                          BoundaryCondition::all_plus());
    Rng rng(derive_seed(seed, 0x200 + bi));
    std::vector<int> u(len + 1);
    auto probe = [&]() {
      u[0] = +1;
      sup = std::max(sup, std::exp(phi(u)));
      u[0] = -1;
      sup = std::max(sup, std::exp(phi(u)));
    };
    // adversarial tail first: the all-plus tail attains the supremum
    for (int i = 1; i <= len; ++i) u[i] = +1;
    probe();
    for (int t = 0; t < tails; ++t) {
      for (int i = 1; i <= len; ++i) u[i] = rng.pm1();
      probe();
    }
    if (!(sup < 0.5)) all_below = false;
  }
  return {"q_below_half_certificate", all_below && sup < 0.5,
          "sup q = " + fmt17(sup) + " (margin " + fmt3(0.5 - sup) + ")"};
}

// criterion 3: empirical var_n log q <= 2 beta sum_{j>=n} j^-alpha
CheckResult crit3(std::uint64_t seed) {
  const int len = 2048, trials = 200;
  double worst_ratio = 0.0;
  bool ok = true;
  for (std::size_t bi = 0; bi < kBetaGrid.size(); ++bi) {
    const double beta = kBetaGrid[bi];
    const PotentialSpec spec{2.0, beta, choose_K(beta, 2.0), 256};
    const auto phi = make_phi0_functional(spec, len,
                                          BoundaryCondition::all_plus());
    for (int s = 0; s < 3; ++s) {
      for (int n = 1; n <= 64; ++n) {
        const double emp =
            empirical_variation(phi, Alphabet::spins(), len, n, trials,
                                derive_seed(seed, 0x300 + bi * 301 + s * 67 + n));
        const double bound = variation_bound(n, spec);
        if (emp > bound) ok = false;
        worst_ratio = std::max(worst_ratio, emp / bound);
      }
    }
  }
  return {"variation_envelope", ok,
          "max empirical/bound = " + fmt3(worst_ratio) +
              " over n in [1,64], 7 betas, 3 seeds"};
}

// criterion 4: heat-bath empirical law vs exact enumeration at 1e6 sweeps
CheckResult crit4(std::uint64_t seed) {
  const long long sweeps = 1000000;
  const int batches = 32;
  bool ok = true;
  std::string detail;
  for (int N : {4, 8}) {
    const PotentialSpec spec{2.0, 1.0, 0.0, 256};
    const auto bc = BoundaryCondition::all_plus();
    const auto probs = exact_marginals(N, bc, spec);
    const int atoms = 1 << N;
    const long long bl = sweeps / batches;
    std::vector<std::vector<double>> counts(atoms,
                                            std::vector<double>(batches, 0.0));
    HeatBathChain chain(N, spec, bc, derive_seed(seed, 0x400 + N));
    for (int t = 0; t < 10 * N; ++t) chain.sweep();
    for (int b = 0; b < batches; ++b)
      for (long long t = 0; t < bl; ++t) {
        chain.sweep();
        std::uint32_t idx = 0;
        const auto& u = chain.spins();
        for (int i = 0; i < N; ++i)
          if (u[i] > 0) idx |= 1u << i;
        counts[idx][b] += 1.0;
      }
    double tv = 0.0, worst_sig = 0.0;
    for (int a = 0; a < atoms; ++a) {
      double mean = 0;
      for (double c : counts[a]) mean += c;
      mean /= double(batches) * double(bl);
      double var = 0;
      for (double c : counts[a]) {
        const double bm = c / double(bl);
        var += (bm - mean) * (bm - mean);
      }
      var /= double(batches - 1);
      const double se = std::sqrt(var / batches);
      const double dev = std::abs(mean - probs[a]);
      tv += dev;
      const double sig = se > 0 ? dev / se : (dev > 0 ? 1e9 : 0.0);
      worst_sig = std::max(worst_sig, sig);
    }
    tv *= 0.5;
    if (worst_sig > 3.0 || tv >= 0.01) ok = false;
    detail += "N=" + std::to_string(N) + ": max|dev|/se=" + fmt3(worst_sig) +
              " tv=" + fmt3(tv) + "; ";
  }
  return {"gibbs_oracle_equivalence", ok, detail};
}

// criterion 5: q=1 equals product Bernoulli to 1e-12; q=2 hand enumerations
CheckResult crit5(std::uint64_t) {
  double worst = 0.0;
  struct Shape {
    int n;
    std::vector<std::pair<int, int>> edges;
  };
  const std::vector<Shape> shapes = {
      {2, {{0, 1}}},
      {3, {{0, 1}, {1, 2}}},
      {3, {{0, 1}, {1, 2}, {0, 2}}},
      {4, {{0, 1}, {0, 2}, {0, 3}}},
      {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}},
  };
  for (const auto& sh : shapes) {
    std::vector<long> coords(sh.n);
    for (int i = 0; i < sh.n; ++i) coords[i] = i;
    for (const auto field :
         {EdgeProbabilityField::rho(1.0, 2.0),
          EdgeProbabilityField::uniform(0.37)}) {
      auto templ = RCGraphState::with_edges(coords, sh.edges);
      const auto dist = exact_rc_distribution(field, 1.0, templ);
      const int m = static_cast<int>(sh.edges.size());
      for (std::uint32_t mask = 0; mask < dist.probs.size(); ++mask) {
        double prod = 1.0;
        for (int e = 0; e < m; ++e) {
          const auto [a, b] = sh.edges[e];
          const double p = field(coords[a], coords[b]);
          prod *= ((mask >> e) & 1u) ? p : (1.0 - p);
        }
        worst = std::max(worst, std::abs(dist.probs[mask] - prod));
      }
    }
  }

  // triangle, q = 2, p = 1/2: weights 8,4,4,4,2,2,2,2 over edge counts
  // 0,1,1,1,2,2,2,3 -> Z = 28; probabilities 2/7, 1/7 x3, 1/14 x4
  auto tri = RCGraphState::complete_window({0, 1, 2});
  const auto d2 =
      exact_rc_distribution(EdgeProbabilityField::uniform(0.5), 2.0, tri);
  double tri_worst = 0.0;
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    const int cnt = __builtin_popcount(mask);
    const double expect = cnt == 0 ? 2.0 / 7.0 : (cnt == 1 ? 1.0 / 7.0 : 1.0 / 14.0);
    tri_worst = std::max(tri_worst, std::abs(d2.probs[mask] - expect));
  }

  // two vertices, one edge, p = 1/2, q = 2: P(edge) = 1/3
  auto e2 = RCGraphState::complete_window({0, 1});
  const auto de =
      exact_rc_distribution(EdgeProbabilityField::uniform(0.5), 2.0, e2);
  const double p_edge = de.edge_marginal(0);
  const double edge_err = std::abs(p_edge - 1.0 / 3.0);

  const bool ok = worst <= 1e-12 && tri_worst <= 1e-12 && edge_err <= 1e-12;
  return {"rc_exactness", ok,
          "q1 atom dev " + fmt3(worst) + "; triangle dev " + fmt3(tri_worst) +
              "; edge marginal dev " + fmt3(edge_err)};
}

// criterion 6: dominance relations, exact grid plus MC at N = 64
CheckResult crit6(std::uint64_t seed) {
  long exact_viol = 0, exact_total = 0;
  struct Shape {
    int n;
    std::vector<std::pair<int, int>> edges;
  };
  const std::vector<Shape> shapes = {
      {2, {{0, 1}}},
      {3, {{0, 1}, {1, 2}}},
      {3, {{0, 1}, {1, 2}, {0, 2}}},
      {4, {{0, 1}, {0, 2}, {0, 3}}},
      {4, {{0, 1}, {1, 2}, {2, 3}}},
      {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}},
      {4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}},
  };
  const std::vector<double> ps = {0.1, 0.3, 0.5, 0.7, 0.9};
  const std::vector<double> qs = {1.0, 1.5, 2.0, 3.0, 4.0};
  for (const auto& sh : shapes) {
    std::vector<long> coords(sh.n);
    for (int i = 0; i < sh.n; ++i) coords[i] = i;
    auto templ = RCGraphState::with_edges(coords, sh.edges);
    const int m = static_cast<int>(sh.edges.size());
    auto dist = [&](double p, double q) {
      return exact_rc_distribution(EdgeProbabilityField::uniform(p), q, templ)
          .probs;
    };
    for (double q : qs)
      for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        ++exact_total;
        if (!dominance_check_exact(dist(ps[i], q), dist(ps[i + 1], q), m)
                 .dominates)
          ++exact_viol;
      }
    for (double p : ps)
      for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        ++exact_total;
        if (!dominance_check_exact(dist(p, qs[i + 1]), dist(p, qs[i]), m)
                 .dominates)
          ++exact_viol;
      }
    for (double p : ps)
      for (double q : qs) {
        ++exact_total;
        if (!dominance_check_exact(dist(p / (p + (1 - p) * q), 1.0),
                                   dist(p, q), m)
                 .dominates)
          ++exact_viol;
      }
  }

  // MC at N = 64, 1e5 samples per stream
  const int N = 64;
  const long long samples = 100000;
  int mc_viol = 0, mc_rows = 0;
  auto run_mc = [&](const GraphDraw& lo, const GraphDraw& hi,
                    const RCGraphState& templ) {
    const auto stats = default_increasing_statistics(templ);
    const auto rows = dominance_check_mc(lo, hi, stats, samples);
    for (const auto& r : rows) {
      ++mc_rows;
      if (r.violation) ++mc_viol;
    }
  };
  {
    // psi(rho(beta),2) increasing in beta
    EsSampler lo = EsSampler::one_sided(N, 0, 1.0, 2.0, derive_seed(seed, 0x601));
    EsSampler hi = EsSampler::one_sided(N, 0, 2.0, 2.0, derive_seed(seed, 0x602));
    for (int t = 0; t < 200; ++t) {
      lo.sweep();
      hi.sweep();
    }
    run_mc(
        [&]() -> RCGraphState& {
          lo.sweep();
          return lo.graph();
        },
        [&]() -> RCGraphState& {
          hi.sweep();
          return hi.graph();
        },
        lo.graph());
  }
  {
    // q = 1 dominates q = 2
    EsSampler lo = EsSampler::one_sided(N, 0, 1.5, 2.0, derive_seed(seed, 0x603));
    for (int t = 0; t < 200; ++t) lo.sweep();
    BernoulliGraphSampler hi(RCGraphState::complete_window(lo.graph().coords),
                             EdgeProbabilityField::rho(1.5, 2.0),
                             derive_seed(seed, 0x604));
    run_mc(
        [&]() -> RCGraphState& {
          lo.sweep();
          return lo.graph();
        },
        [&]() -> RCGraphState& { return hi.draw(); }, lo.graph());
  }
  {
    // psi(rho,2) dominates Bernoulli(rho/(rho+2(1-rho)))
    EsSampler hi = EsSampler::one_sided(N, 0, 1.5, 2.0, derive_seed(seed, 0x605));
    for (int t = 0; t < 200; ++t) hi.sweep();
    BernoulliGraphSampler lo(RCGraphState::complete_window(hi.graph().coords),
                             EdgeProbabilityField::bernoulli_reduced(1.5, 2.0),
                             derive_seed(seed, 0x606));
    run_mc(
        [&]() -> RCGraphState& { return lo.draw(); },
        [&]() -> RCGraphState& {
          hi.sweep();
          return hi.graph();
        },
        hi.graph());
  }

  const bool ok = exact_viol == 0 && mc_viol == 0;
  return {"dominance_relations", ok,
          std::to_string(exact_total) + " exact checks, " +
              std::to_string(exact_viol) + " violations; " +
              std::to_string(mc_rows) + " MC stats, " +
              std::to_string(mc_viol) + " violations"};
}

// criterion 7: Edwards-Sokal spin marginal vs exact Ising enumeration
CheckResult crit7(std::uint64_t seed) {
  const int N = 6;
  const double beta = 1.0, alpha = 2.0;
  const long long sweeps = 1000000;
  const int batches = 32;
  // window-restricted comparison: free boundary on both sides
  const PotentialSpec spec{alpha, beta, 0.0, 256};
  const auto probs = exact_marginals(N, BoundaryCondition::free(), spec);

  EsSampler es = es_coupled_sampler(N, 0, alpha, beta, derive_seed(seed, 0x700));
  for (int t = 0; t < 1000; ++t) es.sweep();
  const int atoms = 1 << N;
  const long long bl = sweeps / batches;
  std::vector<std::vector<double>> counts(atoms,
                                          std::vector<double>(batches, 0.0));
  for (int b = 0; b < batches; ++b)
    for (long long t = 0; t < bl; ++t) {
      es.sweep();
      std::uint32_t idx = 0;
      const auto& u = es.spins();
      for (int i = 0; i < N; ++i)
        if (u[i] > 0) idx |= 1u << i;
      counts[idx][b] += 1.0;
    }
  double worst_sig = 0.0, tv = 0.0;
  for (int a = 0; a < atoms; ++a) {
    double mean = 0;
    for (double c : counts[a]) mean += c;
    mean /= double(batches) * double(bl);
    double var = 0;
    for (double c : counts[a]) {
      const double bm = c / double(bl);
      var += (bm - mean) * (bm - mean);
    }
    var /= double(batches - 1);
    const double se = std::sqrt(var / batches);
    const double dev = std::abs(mean - probs[a]);
    tv += dev;
    worst_sig = std::max(worst_sig, se > 0 ? dev / se : (dev > 0 ? 1e9 : 0.0));
  }
  tv *= 0.5;
  return {"edwards_sokal_consistency", worst_sig <= 3.0,
          "N=6 free: max|dev|/se=" + fmt3(worst_sig) + " tv=" + fmt3(tv)};
}

// criterion 8: folding preserves connectivity on sampled two-sided graphs
CheckResult crit8(std::uint64_t seed) {
  const int M = 8;
  const long long samples = 100000;
  std::vector<long> coords(2 * M + 1);
  for (int i = 0; i <= 2 * M; ++i) coords[i] = i - M;
  BernoulliGraphSampler bern(RCGraphState::complete_window(coords),
                             EdgeProbabilityField::rho(1.0, 2.0),
                             derive_seed(seed, 0x800));
  long long violations = 0;
  for (long long t = 0; t < samples; ++t)
    if (!fold_preserves_connectivity(bern.draw())) ++violations;
  return {"fold_connectivity", violations == 0,
          std::to_string(samples) + " graphs, " + std::to_string(violations) +
              " violations"};
}

// criterion 9: Berbee chain numerics
CheckResult crit9(std::uint64_t seed) {
  std::string detail;
  bool ok = true;

  // (a) constant r: closed form e^{-r k}
  {
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
      const auto rs =
          VariationSequence::from_function([r](int) { return r; }, 64);
      const auto chain = build_berbee_matrix(rs, 32);
      for (int k : {1, 2, 3, 5, 8}) {
        const double a = absorption_probability(chain, 4000, k);
        worst = std::max(worst, std::abs(a - std::exp(-r * k)));
      }
    }
    if (worst > 1e-10) ok = false;
    detail += "const-r dev " + fmt3(worst) + "; ";
  }

  // (b) matrix vs MC on 10 random cases
  {
    Rng rng(derive_seed(seed, 0x901));
    double worst_sig = 0.0;
    for (int c = 0; c < 10; ++c) {
      const double scale = 0.2 + 1.3 * rng.uniform01();
      const double power = 0.5 + rng.uniform01();
      const auto rs = VariationSequence::from_function(
          [&](int n) { return scale / std::pow(double(n), power); }, 64);
      const int k_max = 20 + int(rng.uniform_below(20));
      const auto chain = build_berbee_matrix(rs, std::min(k_max, 63));
      const int k = 1 + int(rng.uniform_below(8));
      const long long N = 5 + long(rng.uniform_below(40));
      const double exact = absorption_probability(chain, N, k);
      double se = 0.0;
      const double mc = simulate_absorption(chain, N, k, 1000000,
                                            derive_seed(seed, 0x910 + c), &se);
      const double sig = se > 0 ? std::abs(mc - exact) / se : 0.0;
      worst_sig = std::max(worst_sig, sig);
    }
    if (worst_sig > 3.0) ok = false;
    detail += "mc max|dev|/se " + fmt3(worst_sig) + "; ";
  }

  // (c) r = 1/n from k = 5: monotone in N, > 0.9 by N = 1e4
  {
    const auto rs = VariationSequence::from_function(
        [](int n) { return 1.0 / n; }, 256);
    const auto chain = build_berbee_matrix(rs, 200);
    double prev = -1.0;
    bool mono = true;
    double final_v = 0.0;
    for (long long N : {100LL, 1000LL, 5000LL, 10000LL}) {
      const double v = absorption_probability(chain, N, 5);
      if (v < prev - 1e-14) mono = false;
      prev = v;
      final_v = v;
    }
    if (!mono || final_v <= 0.9) ok = false;
    detail += "1/n absorption(1e4)=" + fmt3(final_v) +
              (mono ? " monotone; " : " NOT monotone; ");
  }

  // (d) growth classes of the partial-sum diagnostic
  {
    const int M = 20000;
    const auto r1 = VariationSequence::from_function(
        [](int n) { return 1.0 / n; }, M);
    const auto d1 = partial_sum_growth(berbee_condition_partial_sums(r1, M));
    const auto r2 = VariationSequence::from_function(
        [](int n) { return 2.0 / n; }, M);
    const auto d2 = partial_sum_growth(berbee_condition_partial_sums(r2, M));
    if (d1.r2 <= 0.99 || d2.last_quarter_fraction >= 0.01) ok = false;
    detail += "1/n r2=" + fmt3(d1.r2) +
              ", 2/n last-quarter=" + fmt3(d2.last_quarter_fraction);
  }

  return {"berbee_chain", ok, detail};
}

// criterion 10: factor gap statistics at 1e5 sweeps per point
CheckResult crit10(std::uint64_t seed) {
  const double alpha = 2.0;
  const int chains = 4;
  const long long total_sweeps = 100000;
  bool ok = true;
  std::string detail;
  double min_delta_sig = 1e300;

  auto run_point = [&](double beta, int N) {
    CounterexampleSpec cs = CounterexampleSpec::make(
        beta, alpha, N, total_sweeps / chains,
        derive_seed(seed, 0xa00 + std::uint64_t(beta * 16) * 1024 + N));
    cs.chains = chains;
    return gap_statistic(N, cs);
  };

  // (a) beta = 0: delta within 3 se of 0
  for (int N : {8, 32, 128}) {
    const auto g = run_point(0.0, N);
    if (std::abs(g.delta.mean) > 3.0 * g.delta.se + 1e-12) ok = false;
    if (g.delta.se > 0)
      min_delta_sig = std::min(min_delta_sig, g.delta.mean / g.delta.se);
    detail += "b0N" + std::to_string(N) + " d=" + fmt3(g.delta.mean) + "; ";
  }

  // (b) N = 8: MC vs exact enumeration within 3 se
  for (double beta : {1.0, 4.0}) {
    const auto g = run_point(beta, 8);
    const PotentialSpec spec{alpha, beta, choose_K(beta, alpha), 256};
    const double exact = exact_q_expectation(+1, 8, +1, spec) -
                         exact_q_expectation(+1, 8, -1, spec);
    const double sig =
        g.delta.se > 0 ? std::abs(g.delta.mean - exact) / g.delta.se : 1e9;
    if (sig > 3.0) ok = false;
    if (g.delta.mean < -3.0 * g.delta.se - 1e-12) ok = false;
    detail += "b" + fmt3(beta) + "N8 |mc-exact|/se=" + fmt3(sig) + "; ";
  }

  // (d) beta = 16, N = 128: separation beyond 5 combined se
  {
    const auto g = run_point(16.0, 128);
    const double sig = g.delta.se > 0 ? g.delta.mean / g.delta.se : 1e9;
    if (!(g.delta.mean > 5.0 * g.delta.se)) ok = false;
    if (g.delta.mean < -3.0 * g.delta.se - 1e-12) ok = false;
    detail += "b16N128 d=" + fmt3(g.delta.mean) + " d/se=" + fmt3(sig);
  }

  return {"factor_gap", ok, detail};
}

}  // namespace

CheckResult run_criterion(int criterion, std::uint64_t seed) {
  switch (criterion) {
    case 1:
      return crit1(seed);
    case 2:
      return crit2(seed);
    case 3:
      return crit3(seed);
    case 4:
      return crit4(seed);
    case 5:
      return crit5(seed);
    case 6:
      return crit6(seed);
    case 7:
      return crit7(seed);
    case 8:
      return crit8(seed);
    case 9:
      return crit9(seed);
    case 10:
      return crit10(seed);
  }
  throw std::invalid_argument("run_criterion: criterion must be 1..10");
}

std::vector<CheckResult> run_all_criteria(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (int c = 1; c <= 10; ++c) out.push_back(run_criterion(c, seed));
  return out;
}

CheckResult criterion11_reproducibility(
    std::uint64_t seed, const std::vector<CheckResult>& first_pass) {
  // second pass over every criterion plus tiny runner outputs, byte-compared
  std::string a, b;
  for (const auto& r : first_pass)
    a += r.name + "|" + (r.pass ? "1" : "0") + "|" + r.detail + "\n";
  for (const auto& r : run_all_criteria(seed))
    b += r.name + "|" + (r.pass ? "1" : "0") + "|" + r.detail + "\n";

  IsingConfig ic;
  ic.betas = {0.5};
  ic.Ns = {5};
  ic.sweeps = 2048;
  BerbeeConfig bc;
  bc.partial_M = 512;
  bc.k_max = 32;
  FactorConfig fc;
  fc.betas = {1.0};
  fc.Ns = {6};
  fc.sweeps = 4096;
  RcConfig rc;
  rc.sweeps = 2560;
  rc.N = 16;
  rc.beta_grid = {0.5};
  rc.chain_check = false;
  for (int pass = 0; pass < 2; ++pass) {
    std::string& dst = pass == 0 ? a : b;
    for (const auto& f : run_ising(ic, seed).files) dst += f.second;
    for (const auto& f : run_berbee(bc, seed).files) dst += f.second;
    for (const auto& f : run_factor(fc, seed).files) dst += f.second;
    for (const auto& f : run_rc(rc, seed).files) dst += f.second;
  }

  const bool equal = a == b;
  return {"reproducibility", equal,
          equal ? "two passes byte-identical (" +
                      std::to_string(a.size()) + " bytes)"
                : "byte mismatch between passes"};
}

std::vector<int> check_set_for(const std::string& subcommand) {
  if (subcommand == "ising") return {4};
  if (subcommand == "berbee") return {9};
  if (subcommand == "rc") return {5, 6, 7, 8};
  if (subcommand == "factor") return {1, 2, 3, 10};
  throw std::invalid_argument("check_set_for: unknown subcommand");
}

}  // namespace gq
