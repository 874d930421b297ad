#pragma once

// Command-line experiment harness. Every subcommand writes CSV that starts
// with a `#` metadata block (tool version, config echo, PRNG name); rows come
// out in deterministic (n, seed) order whatever the worker count.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
// exhausted (partial output written).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kneser/kneser.hpp"
#include "kneser/solvers.hpp"

namespace kneser {

inline constexpr const char* kToolVersion = "kneser-lab 1.0.0";

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitBudget = 3 };

struct ExperimentConfig {
  std::string command;
  int n_lo = 5;
  int n_hi = 5;
  int k = 2;  // verify-constructions and families: 0 = all / inferred
  int r = 2;
  Probability p{1, 2};
  std::vector<std::uint64_t> seeds{0};
  std::uint64_t budget_ms = 60'000;
  std::string out;  // empty: standard output
  bool no_timing = false;
  int l = 2;
  int t = 0;  // 0: n - 2k + 1 for zeta
  std::string problem = "chi";
  std::string in;
  std::uint64_t search_seed = 1;
  std::string witness_dir;
  int b = 0;
  int h = 0;
  BudgetMode mode = BudgetMode::exact;

  /// Arguments that parse back to this config (subcommand first).
  std::vector<std::string> to_args() const;
  /// to_args joined by spaces.
  std::string to_string() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Thrown for malformed command lines; carries the usage text when useful.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses `subcommand --flag value ...` (no program name). UsageError on failure.
ExperimentConfig parse_config(const std::vector<std::string>& args);

/// "a..b" or a single integer.
std::pair<int, int> parse_range(const std::string& text);
/// Comma-separated seeds, each a number or an inclusive range a..b.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

/// Runs a parsed config, writing CSV to `out` (or config.out) and diagnostics to `err`.
int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry point: parse, run, map errors to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count: hardware concurrency, capped by KNESER_LAB_THREADS when set.
unsigned worker_count();

/// chi(KG^r_{n,k}) = max(1, ceil((n - r(k-1)) / (r-1))).
std::int64_t kneser_chromatic_formula(int n, int k, int r);

}  // namespace kneser
