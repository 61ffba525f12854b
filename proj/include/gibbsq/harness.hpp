#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gq {

// ---- deterministic text output ----

// fixed 17-significant-digit decimal rendering; byte-stable for a given
// double on a given platform
std::string fmt17(double x);

std::uint64_t fnv1a64(const std::string& s);

struct CsvTable {
  std::string header;
  std::vector<std::string> rows;
  std::string render() const;
};

// ---- run configurations (JSON file; CLI flags override) ----

struct IsingConfig {
  double alpha = 2.0;
  std::vector<double> betas = {0.0, 0.5, 1.0};
  std::vector<int> Ns = {8, 16};
  std::string boundary = "both";  // plus | minus | both | free
  long long sweeps = 20000;       // per point, across chains
  long long burn_in = -1;         // <0: 10 N
  int chains = 2;
  bool exact_compare = true;      // adds oracle columns when N <= 8
};

struct BerbeeConfig {
  std::string r_kind = "one_over_n";  // one_over_n | two_over_n | constant
  double r_const = 1.0;
  int k_max = 200;
  std::vector<int> ks = {1, 3, 5};
  std::vector<long long> Ns = {100, 1000, 10000};
  int partial_M = 20000;
  long long mc_paths = 0;  // >0 adds an MC cross-check column
};

struct RcConfig {
  double alpha = 2.0;
  double beta = 1.0;
  int N = 64;           // one-sided window for MC dominance / chain check
  int M = 8;            // two-sided half-window
  long long sweeps = 20000;
  long L = 16;          // percolation proxy distance
  std::vector<double> beta_grid = {0.4, 0.8, 1.2};
  bool chain_check = true;
};

struct FactorConfig {
  double alpha = 2.0;
  std::vector<double> betas = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<int> Ns = {8, 32, 128};
  long long sweeps = 100000;  // per point and sign, across chains
  long long burn_in = -1;
  int chains = 4;
};

IsingConfig parse_ising_config(const std::string& json_text);
BerbeeConfig parse_berbee_config(const std::string& json_text);
RcConfig parse_rc_config(const std::string& json_text);
FactorConfig parse_factor_config(const std::string& json_text);

// ---- runners ----

struct RunOutput {
  // file name suffix -> contents; files[0] is the primary CSV
  std::vector<std::pair<std::string, std::string>> files;
  std::string manifest;  // JSON; includes config echo, hash, seed, wall time
  std::string report;    // short human-readable summary
};

RunOutput run_ising(const IsingConfig& cfg, std::uint64_t seed);
RunOutput run_berbee(const BerbeeConfig& cfg, std::uint64_t seed);
RunOutput run_rc(const RcConfig& cfg, std::uint64_t seed);
RunOutput run_factor(const FactorConfig& cfg, std::uint64_t seed);

void write_run_output(const RunOutput& out, const std::string& out_prefix);

// ---- acceptance checks ----

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // deterministic given the seed (no timings)
};

// criteria 1..10; index is the criterion number
CheckResult run_criterion(int criterion, std::uint64_t seed);
std::vector<CheckResult> run_all_criteria(std::uint64_t seed);

// criterion 11: re-runs the others plus the tiny runners and compares the
// rendered bytes of the two passes
CheckResult criterion11_reproducibility(
    std::uint64_t seed, const std::vector<CheckResult>& first_pass);

// check sets per CLI subcommand
std::vector<int> check_set_for(const std::string& subcommand);

// returns the number of failures; prints one line per check to out
int print_check_results(const std::vector<CheckResult>& results,
                        std::string& out);

// CLI exit codes: 2 usage, 3 resource budget, 1 anything else
int exit_code_for(const std::exception& e);

}  // namespace gq
