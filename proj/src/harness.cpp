#include "gibbsq/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "gibbsq/berbee.hpp"
#include "gibbsq/errors.hpp"
#include "gibbsq/factor.hpp"
#include "gibbsq/ising.hpp"
#include "gibbsq/parallel.hpp"
#include "gibbsq/random_cluster.hpp"

namespace gq {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string CsvTable::render() const {
  std::string out = header + "\n";
  for (const auto& r : rows) out += r + "\n";
  return out;
}

namespace {

void reject_unknown(const ordered_json& j,
                    const std::vector<std::string>& known) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : known)
      if (it.key() == k) ok = true;
    if (!ok) throw UsageError("unknown config field: " + it.key());
  }
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
}

template <typename T>
void get_to_if(const ordered_json& j, const char* key, T& out) {
  if (j.contains(key)) {
    try {
      j.at(key).get_to(out);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad value for config field: ") + key);
    }
  }
}

std::string manifest_json(const ordered_json& config_echo, std::uint64_t seed,
                          double wall_time_s,
                          const std::vector<std::string>& files) {
  ordered_json m;
  m["config"] = config_echo;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "0x%016llx",
                static_cast<unsigned long long>(fnv1a64(config_echo.dump())));
  m["config_hash"] = hex;
  m["seed"] = seed;
  m["wall_time_s"] = wall_time_s;
  m["files"] = files;
  m["versions"] = {{"gibbsq", "0.1.0"}, {"csv_format", 1}};
  return m.dump(2) + "\n";
}

struct WallClock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

BoundaryCondition bc_from_name(const std::string& name) {
  if (name == "plus") return BoundaryCondition::all_plus();
  if (name == "minus") return BoundaryCondition::all_minus();
  if (name == "free") return BoundaryCondition::free();
  throw UsageError("boundary must be plus|minus|free|both");
}

}  // namespace

IsingConfig parse_ising_config(const std::string& text) {
  const auto j = parse_json(text);
  reject_unknown(j, {"alpha", "betas", "Ns", "boundary", "sweeps", "burn_in",
                     "chains", "exact_compare"});
  IsingConfig c;
  get_to_if(j, "alpha", c.alpha);
  get_to_if(j, "betas", c.betas);
  get_to_if(j, "Ns", c.Ns);
  get_to_if(j, "boundary", c.boundary);
  get_to_if(j, "sweeps", c.sweeps);
  get_to_if(j, "burn_in", c.burn_in);
  get_to_if(j, "chains", c.chains);
  get_to_if(j, "exact_compare", c.exact_compare);
  if (!(c.alpha > 1.0)) throw UsageError("bad config value: alpha");
  for (double b : c.betas)
    if (b < 0) throw UsageError("bad config value: betas");
  for (int n : c.Ns)
    if (n < 1 || n > 4096) throw UsageError("bad config value: Ns");
  if (c.sweeps < 64) throw UsageError("bad config value: sweeps");
  if (c.chains < 1) throw UsageError("bad config value: chains");
  if (c.boundary != "both") bc_from_name(c.boundary);
  return c;
}

BerbeeConfig parse_berbee_config(const std::string& text) {
  const auto j = parse_json(text);
  reject_unknown(j, {"r_kind", "r_const", "k_max", "ks", "Ns", "partial_M",
                     "mc_paths"});
  BerbeeConfig c;
  get_to_if(j, "r_kind", c.r_kind);
  get_to_if(j, "r_const", c.r_const);
  get_to_if(j, "k_max", c.k_max);
  get_to_if(j, "ks", c.ks);
  get_to_if(j, "Ns", c.Ns);
  get_to_if(j, "partial_M", c.partial_M);
  get_to_if(j, "mc_paths", c.mc_paths);
  if (c.r_kind != "one_over_n" && c.r_kind != "two_over_n" &&
      c.r_kind != "constant")
    throw UsageError("bad config value: r_kind");
  if (c.r_const < 0) throw UsageError("bad config value: r_const");
  if (c.k_max < 1 || c.k_max > 100000) throw UsageError("bad config value: k_max");
  for (int k : c.ks)
    if (k < 0 || k > c.k_max) throw UsageError("bad config value: ks");
  if (c.partial_M < 8) throw UsageError("bad config value: partial_M");
  return c;
}

RcConfig parse_rc_config(const std::string& text) {
  const auto j = parse_json(text);
  reject_unknown(j, {"alpha", "beta", "N", "M", "sweeps", "L", "beta_grid",
                     "chain_check"});
  RcConfig c;
  get_to_if(j, "alpha", c.alpha);
  get_to_if(j, "beta", c.beta);
  get_to_if(j, "N", c.N);
  get_to_if(j, "M", c.M);
  get_to_if(j, "sweeps", c.sweeps);
  get_to_if(j, "L", c.L);
  get_to_if(j, "beta_grid", c.beta_grid);
  get_to_if(j, "chain_check", c.chain_check);
  if (!(c.alpha > 1.0)) throw UsageError("bad config value: alpha");
  if (c.beta < 0) throw UsageError("bad config value: beta");
  if (c.N < 2) throw UsageError("bad config value: N");
  if (c.M < 1 || c.M > 128) throw UsageError("bad config value: M");
  if (c.sweeps < 640) throw UsageError("bad config value: sweeps");
  if (c.L < 1) throw UsageError("bad config value: L");
  return c;
}

FactorConfig parse_factor_config(const std::string& text) {
  const auto j = parse_json(text);
  reject_unknown(j, {"alpha", "betas", "Ns", "sweeps", "burn_in", "chains"});
  FactorConfig c;
  get_to_if(j, "alpha", c.alpha);
  get_to_if(j, "betas", c.betas);
  get_to_if(j, "Ns", c.Ns);
  get_to_if(j, "sweeps", c.sweeps);
  get_to_if(j, "burn_in", c.burn_in);
  get_to_if(j, "chains", c.chains);
  if (!(c.alpha > 1.0)) throw UsageError("bad config value: alpha");
  for (double b : c.betas)
    if (b < 0) throw UsageError("bad config value: betas");
  for (int n : c.Ns)
    if (n < 1) throw UsageError("bad config value: Ns");
  if (c.sweeps < 640) throw UsageError("bad config value: sweeps");
  if (c.chains < 1) throw UsageError("bad config value: chains");
  return c;
}

// ---- runners ----

RunOutput run_ising(const IsingConfig& cfg, std::uint64_t seed) {
  WallClock clock;
  std::vector<std::string> boundaries;
  if (cfg.boundary == "both")
    boundaries = {"plus", "minus"};
  else
    boundaries = {cfg.boundary};

  struct Point {
    double beta;
    int N;
    std::string boundary;
  };
  std::vector<Point> grid;
  for (double b : cfg.betas)
    for (int n : cfg.Ns)
      for (const auto& bd : boundaries) grid.push_back({b, n, bd});

  std::vector<std::string> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto& pt = grid[i];
    const std::uint64_t pseed = derive_seed(seed, i);
    PotentialSpec spec{cfg.alpha, pt.beta, 0.0, 256};
    const long long burn = cfg.burn_in >= 0 ? cfg.burn_in : 10LL * pt.N;
    const long long per_chain = cfg.sweeps / cfg.chains + burn;

    MeasureEstimate mag;
    const auto f = [](std::span<const int> u) {
      double m = 0;
      for (int s : u) m += s;
      return m / double(u.size());
    };
    if (pt.boundary == "free") {
      // free boundary: single-chain stream around HeatBathChain
      HeatBathChain chain(pt.N, spec, BoundaryCondition::free(), pseed);
      for (long long t = 0; t < burn; ++t) chain.sweep();
      const long long n = cfg.sweeps;
      BatchMeans bm(32, std::max<long long>(1, n / 32));
      while (!bm.complete()) {
        chain.sweep();
        bm.add(f(chain.spins()));
      }
      mag = bm.estimate();
      mag.seed = pseed;
      mag.burn_in = burn;
    } else {
      mag = estimate_nu_pm(pt.N, pt.boundary == "plus" ? +1 : -1, spec, f,
                           per_chain, burn, pseed, cfg.chains, 16);
    }

    std::string exact_sigmas = "", exact_tv = "";
    if (cfg.exact_compare && pt.N <= 8 && pt.boundary != "free") {
      // one dedicated chain vs enumeration: max atom deviation in stderr
      // units and total-variation distance
      const auto probs =
          exact_marginals(pt.N, bc_from_name(pt.boundary), spec);
      const int atoms = 1 << pt.N;
      const int batches = 32;
      const long long bl = std::max<long long>(1, cfg.sweeps / batches);
      std::vector<std::vector<double>> counts(
          atoms, std::vector<double>(batches, 0.0));
      HeatBathChain chain(pt.N, spec, bc_from_name(pt.boundary),
                          derive_seed(pseed, 0xeaULL));
      for (long long t = 0; t < burn; ++t) chain.sweep();
      for (int b = 0; b < batches; ++b)
        for (long long t = 0; t < bl; ++t) {
          chain.sweep();
          std::uint32_t idx = 0;
          const auto& u = chain.spins();
          for (int site = 0; site < pt.N; ++site)
            if (u[site] > 0) idx |= 1u << site;
          counts[idx][b] += 1.0;
        }
      double tv = 0.0, worst = 0.0;
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
        if (se > 0) worst = std::max(worst, dev / se);
      }
      tv *= 0.5;
      exact_sigmas = fmt17(worst);
      exact_tv = fmt17(tv);
    }

    rows[i] = fmt17(pt.beta) + "," + std::to_string(pt.N) + "," + pt.boundary +
              "," + std::to_string(pseed) + "," + fmt17(mag.mean) + "," +
              fmt17(mag.se) + "," + std::to_string(mag.n_samples) + "," +
              exact_sigmas + "," + exact_tv;
  });

  CsvTable csv;
  csv.header =
      "beta,N,boundary,seed,magnetization,magnetization_se,n_samples,"
      "exact_max_sigmas,exact_tv";
  csv.rows = rows;

  RunOutput out;
  out.files.emplace_back(".csv", csv.render());
  ordered_json echo;
  echo["subcommand"] = "ising";
  echo["alpha"] = cfg.alpha;
  echo["betas"] = cfg.betas;
  echo["Ns"] = cfg.Ns;
  echo["boundary"] = cfg.boundary;
  echo["sweeps"] = cfg.sweeps;
  echo["burn_in"] = cfg.burn_in;
  echo["chains"] = cfg.chains;
  echo["exact_compare"] = cfg.exact_compare;
  out.manifest = manifest_json(echo, seed, clock.elapsed(), {".csv"});
  out.report = "ising: " + std::to_string(grid.size()) + " grid points\n";
  return out;
}

RunOutput run_berbee(const BerbeeConfig& cfg, std::uint64_t seed) {
  WallClock clock;
  const int need = std::max(cfg.k_max + 1, cfg.partial_M);
  std::function<double(int)> rf;
  if (cfg.r_kind == "one_over_n")
    rf = [](int n) { return 1.0 / n; };
  else if (cfg.r_kind == "two_over_n")
    rf = [](int n) { return 2.0 / n; };
  else
    rf = [c = cfg.r_const](int) { return c; };
  const auto r = VariationSequence::from_function(rf, need);
  const auto chain = build_berbee_matrix(r, cfg.k_max);

  CsvTable curves;
  curves.header =
      "r_kind,k_max,k,N,absorption,mixing_lower_bound,mc_absorption,mc_se";
  for (int k : cfg.ks)
    for (long long N : cfg.Ns) {
      const double a = absorption_probability(chain, N, k);
      std::string mc = "", mcse = "";
      if (cfg.mc_paths > 0) {
        double se = 0.0;
        const double v = simulate_absorption(chain, N, k, cfg.mc_paths,
                                             derive_seed(seed, k * 131 + N),
                                             &se);
        mc = fmt17(v);
        mcse = fmt17(se);
      }
      curves.rows.push_back(cfg.r_kind + "," + std::to_string(cfg.k_max) + "," +
                            std::to_string(k) + "," + std::to_string(N) + "," +
                            fmt17(a) + "," + fmt17(a * a) + "," + mc + "," +
                            mcse);
    }

  const auto sums = berbee_condition_partial_sums(r, cfg.partial_M);
  const auto diag = partial_sum_growth(sums);
  CsvTable partial;
  partial.header = "n,partial_sum";
  const int stride = std::max(1, cfg.partial_M / 512);
  for (int n = 1; n <= cfg.partial_M; n += stride)
    partial.rows.push_back(std::to_string(n) + "," + fmt17(sums[n - 1]));

  RunOutput out;
  out.files.emplace_back(".csv", curves.render());
  out.files.emplace_back(".partial.csv", partial.render());
  ordered_json echo;
  echo["subcommand"] = "berbee";
  echo["r_kind"] = cfg.r_kind;
  echo["r_const"] = cfg.r_const;
  echo["k_max"] = cfg.k_max;
  echo["ks"] = cfg.ks;
  echo["Ns"] = cfg.Ns;
  echo["partial_M"] = cfg.partial_M;
  echo["mc_paths"] = cfg.mc_paths;
  echo["growth_log_slope"] = fmt17(diag.log_slope);
  echo["growth_r2"] = fmt17(diag.r2);
  echo["growth_last_quarter_fraction"] = fmt17(diag.last_quarter_fraction);
  out.manifest =
      manifest_json(echo, seed, clock.elapsed(), {".csv", ".partial.csv"});
  out.report = "berbee: growth slope " + fmt17(diag.log_slope) + ", r2 " +
               fmt17(diag.r2) + "\n";
  return out;
}

RunOutput run_rc(const RcConfig& cfg, std::uint64_t seed) {
  WallClock clock;

  // exact dominance grid on small shapes
  CsvTable dom;
  dom.header = "relation,shape,p,q,dominates,worst_gap";
  struct Shape {
    std::string name;
    int n;
    std::vector<std::pair<int, int>> edges;
  };
  const std::vector<Shape> shapes = {
      {"edge2", 2, {{0, 1}}},
      {"path3", 3, {{0, 1}, {1, 2}}},
      {"triangle", 3, {{0, 1}, {1, 2}, {0, 2}}},
      {"star4", 4, {{0, 1}, {0, 2}, {0, 3}}},
      {"cycle4", 4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}},
  };
  const std::vector<double> ps = {0.1, 0.3, 0.5, 0.7, 0.9};
  const std::vector<double> qs = {1.0, 1.5, 2.0, 3.0, 4.0};
  for (const auto& sh : shapes) {
    std::vector<long> coords(sh.n);
    for (int i = 0; i < sh.n; ++i) coords[i] = i;
    auto templ = RCGraphState::with_edges(coords, sh.edges);
    auto dist = [&](double p, double q) {
      return exact_rc_distribution(EdgeProbabilityField::uniform(p), q, templ);
    };
    for (double q : qs)
      for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
        const auto lo = dist(ps[i], q), hi = dist(ps[i + 1], q);
        const auto r = dominance_check_exact(lo.probs, hi.probs, sh.edges.size());
        dom.rows.push_back("incr_p," + sh.name + "," + fmt17(ps[i]) + "->" +
                           fmt17(ps[i + 1]) + "," + fmt17(q) + "," +
                           (r.dominates ? "1" : "0") + "," + fmt17(r.worst_gap));
      }
    for (double p : ps)
      for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
        const auto hi = dist(p, qs[i]), lo = dist(p, qs[i + 1]);
        const auto r = dominance_check_exact(lo.probs, hi.probs, sh.edges.size());
        dom.rows.push_back("decr_q," + sh.name + "," + fmt17(p) + "," +
                           fmt17(qs[i]) + "->" + fmt17(qs[i + 1]) + "," +
                           (r.dominates ? "1" : "0") + "," + fmt17(r.worst_gap));
      }
    for (double p : ps)
      for (double q : qs) {
        const auto hi = dist(p, q);
        const auto lo = dist(p / (p + (1 - p) * q), 1.0);
        const auto r = dominance_check_exact(lo.probs, hi.probs, sh.edges.size());
        dom.rows.push_back("rc_vs_bernoulli," + sh.name + "," + fmt17(p) + "," +
                           fmt17(q) + "," + (r.dominates ? "1" : "0") + "," +
                           fmt17(r.worst_gap));
      }
  }

  // percolation proxy sweep over beta
  CsvTable proxy;
  proxy.header = "beta,N,L,proxy,proxy_se,n_samples";
  for (std::size_t bi = 0; bi < cfg.beta_grid.size(); ++bi) {
    const double beta = cfg.beta_grid[bi];
    EsSampler es = EsSampler::one_sided(cfg.N, 0, 2.0 * beta, cfg.alpha,
                                        derive_seed(seed, 1000 + bi));
    for (int t = 0; t < 200; ++t) es.sweep();
    const auto est = percolation_proxy(
        [&]() -> RCGraphState& {
          es.sweep();
          return es.graph();
        },
        cfg.sweeps, cfg.L);
    proxy.rows.push_back(fmt17(beta) + "," + std::to_string(cfg.N) + "," +
                         std::to_string(cfg.L) + "," + fmt17(est.mean) + "," +
                         fmt17(est.se) + "," + std::to_string(est.n_samples));
  }

  RunOutput out;
  out.files.emplace_back(".dominance.csv", dom.render());
  out.files.emplace_back(".proxy.csv", proxy.render());

  std::string chain_report;
  if (cfg.chain_check) {
    CsvTable chain;
    chain.header = "link,pass,detail";
    const auto links = theorem1_chain_check(cfg.beta, cfg.alpha, cfg.N,
                                            derive_seed(seed, 77),
                                            cfg.sweeps, cfg.sweeps);
    for (const auto& l : links) {
      chain.rows.push_back(l.name + "," + (l.pass ? "1" : "0") + ",\"" +
                           l.detail + "\"");
      chain_report += l.name + (l.pass ? " pass" : " FAIL") + "; ";
    }
    out.files.emplace_back(".chain.csv", chain.render());
  }

  ordered_json echo;
  echo["subcommand"] = "rc";
  echo["alpha"] = cfg.alpha;
  echo["beta"] = cfg.beta;
  echo["N"] = cfg.N;
  echo["M"] = cfg.M;
  echo["sweeps"] = cfg.sweeps;
  echo["L"] = cfg.L;
  echo["beta_grid"] = cfg.beta_grid;
  echo["chain_check"] = cfg.chain_check;
  std::vector<std::string> names;
  for (const auto& f : out.files) names.push_back(f.first);
  out.manifest = manifest_json(echo, seed, clock.elapsed(), names);
  out.report = "rc: " + std::to_string(dom.rows.size()) +
               " dominance rows; " + chain_report + "\n";
  return out;
}

RunOutput run_factor(const FactorConfig& cfg, std::uint64_t seed) {
  WallClock clock;
  struct Point {
    double beta;
    int N;
  };
  std::vector<Point> grid;
  for (double b : cfg.betas)
    for (int n : cfg.Ns) grid.push_back({b, n});

  std::vector<std::string> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto& pt = grid[i];
    CounterexampleSpec cs = CounterexampleSpec::make(
        pt.beta, cfg.alpha, pt.N, cfg.sweeps / cfg.chains,
        derive_seed(seed, i));
    cs.chains = cfg.chains;
    cs.burn_in = cfg.burn_in;
    const GapResult g = gap_statistic(pt.N, cs);
    rows[i] = fmt17(pt.beta) + "," + std::to_string(pt.N) + "," +
              std::to_string(cs.seed) + "," + fmt17(g.plus.mean) + "," +
              fmt17(g.plus.se) + "," + fmt17(g.minus.mean) + "," +
              fmt17(g.minus.se) + "," + fmt17(g.delta.mean) + "," +
              fmt17(g.delta.se);
  });

  CsvTable csv;
  csv.header = "beta,N,seed,plus_mean,plus_se,minus_mean,minus_se,delta,delta_se";
  csv.rows = rows;

  RunOutput out;
  out.files.emplace_back(".csv", csv.render());
  ordered_json echo;
  echo["subcommand"] = "factor";
  echo["alpha"] = cfg.alpha;
  echo["betas"] = cfg.betas;
  echo["Ns"] = cfg.Ns;
  echo["sweeps"] = cfg.sweeps;
  echo["burn_in"] = cfg.burn_in;
  echo["chains"] = cfg.chains;
  out.manifest = manifest_json(echo, seed, clock.elapsed(), {".csv"});
  out.report = "factor: " + std::to_string(grid.size()) + " grid points\n";
  return out;
}

void write_run_output(const RunOutput& out, const std::string& out_prefix) {
  for (const auto& [suffix, contents] : out.files) {
    std::ofstream f(out_prefix + suffix, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_prefix + suffix);
    f << contents;
  }
  std::ofstream m(out_prefix + ".manifest.json", std::ios::binary);
  if (!m)
    throw std::runtime_error("cannot write " + out_prefix + ".manifest.json");
  m << out.manifest;
}

int print_check_results(const std::vector<CheckResult>& results,
                        std::string& out) {
  int failures = 0;
  for (const auto& r : results) {
    out += std::string(r.pass ? "PASS" : "FAIL") + " " + r.name + ": " +
           r.detail + "\n";
    if (!r.pass) ++failures;
  }
  return failures;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return 2;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return 2;
  if (dynamic_cast<const ResourceError*>(&e)) return 3;
  return 1;
}

}  // namespace gq
