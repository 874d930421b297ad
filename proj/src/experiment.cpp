#include "kneser/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "kneser/colorings.hpp"
#include "kneser/emptyfam.hpp"
#include "kneser/errors.hpp"
#include "kneser/families.hpp"
#include "kneser/random.hpp"

namespace kneser {
namespace {

struct CommandSpec {
  const char* name;
  const char* help;
  std::vector<std::string_view> options;
};

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> table = {
      {"verify-constructions", "check every explicit coloring construction", {"k", "out"}},
      {"chi-random",
       "chromatic number of sampled Kneser (hyper)graphs",
       {"n-range", "k", "r", "p", "seeds", "budget-ms", "out", "no-timing"}},
      {"search-empty",
       "search for empty ordered families in samples",
       {"n-range", "k", "r", "p", "seeds", "l", "search-seed", "budget-ms", "witness-dir", "out", "no-timing"}},
      {"zeta",
       "bounds on the fewest monochromatic edges",
       {"n-range", "k", "t", "search-seed", "budget-ms", "mode", "out", "no-timing"}},
      {"solve",
       "run one exact solver",
       {"problem", "n-range", "k", "r", "t", "p", "seeds", "h", "budget-ms", "mode", "out", "no-timing"}},
      {"sample", "write a sample file", {"n-range", "k", "r", "p", "seeds", "out"}},
      {"families", "statistics of a family file", {"in", "n-range", "k", "b", "out"}},
  };
  return table;
}

const CommandSpec* find_command(const std::string& name) {
  for (const auto& c : commands())
    if (name == c.name) return &c;
  return nullptr;
}

bool has_option(const CommandSpec& spec, std::string_view opt) {
  return std::find(spec.options.begin(), spec.options.end(), opt) != spec.options.end();
}

const std::vector<std::string> kProblems = {"chi", "chi-hyper", "alpha", "zeta", "colorable", "union", "sequential-k2"};

template <typename T>
T parse_number(std::string_view s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw UsageError(std::string("malformed ") + what + " '" + std::string(s) + "'");
  return v;
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seeds[i]);
  }
  return out;
}

void validate(const ExperimentConfig& c) {
  const bool k_optional = c.command == "verify-constructions" || c.command == "families";
  if (c.n_lo < 1 || c.n_hi > kMaxGround || c.n_lo > c.n_hi) throw UsageError("n range must satisfy 1 <= a <= b <= 64");
  if (c.k < (k_optional ? 0 : 1)) throw UsageError("k must be positive");
  if (c.r < 2) throw UsageError("r must be at least 2");
  try {
    c.p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (c.seeds.empty()) throw UsageError("at least one seed is required");
  if (c.budget_ms == 0) throw UsageError("budget must be positive");
  if (c.l < 1) throw UsageError("l must be positive");
  if (c.t < 0) throw UsageError("t must be non-negative");
  if (std::find(kProblems.begin(), kProblems.end(), c.problem) == kProblems.end())
    throw UsageError("unknown problem '" + c.problem + "'");
  if (c.command == "sample" && (c.n_lo != c.n_hi || c.seeds.size() != 1))
    throw UsageError("sample takes a single n and a single seed");
  if (c.command == "families" && c.in.empty()) throw UsageError("families needs --in");
  if (c.command == "families" && c.n_lo != c.n_hi) throw UsageError("families takes a single n");
}

}  // namespace

std::pair<int, int> parse_range(const std::string& text) {
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const int a = parse_number<int>(std::string_view(text).substr(0, dots), "range");
    const int b = parse_number<int>(std::string_view(text).substr(dots + 2), "range");
    if (a > b) throw UsageError("empty range '" + text + "'");
    return {a, b};
  }
  const int v = parse_number<int>(text, "range");
  return {v, v};
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (auto dots = item.find(".."); dots != std::string::npos) {
      const auto a = parse_number<std::uint64_t>(std::string_view(item).substr(0, dots), "seed range");
      const auto b = parse_number<std::uint64_t>(std::string_view(item).substr(dots + 2), "seed range");
      if (a > b) throw UsageError("seed range '" + item + "' is empty");
      if (b - a >= 1'000'000) throw UsageError("seed range '" + item + "' is too long");
      for (auto s = a; s <= b; ++s) out.push_back(s);
    } else {
      out.push_back(parse_number<std::uint64_t>(item, "seed"));
    }
  }
  if (out.empty()) throw UsageError("empty seed list");
  return out;
}

std::vector<std::string> ExperimentConfig::to_args() const {
  const auto* spec = find_command(command);
  if (!spec) throw std::invalid_argument("unknown command '" + command + "'");
  std::vector<std::string> a{command};
  auto add = [&](std::string flag, std::string value) {
    a.push_back("--" + std::move(flag));
    a.push_back(std::move(value));
  };
  for (auto opt : spec->options) {
    if (opt == "n-range") add("n-range", std::to_string(n_lo) + ".." + std::to_string(n_hi));
    else if (opt == "k") {
      if (k != 0) add("k", std::to_string(k));
    } else if (opt == "r") add("r", std::to_string(r));
    else if (opt == "p") add("p", p.to_string());
    else if (opt == "seeds") add("seeds", join_seeds(seeds));
    else if (opt == "budget-ms") add("budget-ms", std::to_string(budget_ms));
    else if (opt == "out") {
      if (!out.empty()) add("out", out);
    } else if (opt == "no-timing") {
      if (no_timing) a.push_back("--no-timing");
    } else if (opt == "l") add("l", std::to_string(l));
    else if (opt == "t") add("t", std::to_string(t));
    else if (opt == "problem") add("problem", problem);
    else if (opt == "in") add("in", in);
    else if (opt == "search-seed") add("search-seed", std::to_string(search_seed));
    else if (opt == "witness-dir") {
      if (!witness_dir.empty()) add("witness-dir", witness_dir);
    } else if (opt == "b") add("b", std::to_string(b));
    else if (opt == "h") add("h", std::to_string(h));
    else if (opt == "mode") add("mode", kneser::to_string(mode));
  }
  return a;
}

std::string ExperimentConfig::to_string() const {
  std::string s;
  for (const auto& part : to_args()) {
    if (!s.empty()) s += ' ';
    s += part;
  }
  return s;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Kneser graph experiment harness", "kneser-lab"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  struct Text {
    std::string n_range, p = "1/2", seeds = "0", mode = "exact";
    int n = 0;
    int k = 2;
  };
  std::map<std::string, Text> text;
  std::map<std::string, CLI::App*> subs;
  ExperimentConfig c;

  for (const auto& spec : commands()) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    subs[spec.name] = sub;
    auto& t = text[spec.name];
    for (auto opt : spec.options) {
      if (opt == "n-range") {
        sub->add_option("--n", t.n, "ground set size");
        sub->add_option("--n-range", t.n_range, "inclusive range a..b of ground set sizes");
      } else if (opt == "k") sub->add_option("--k", t.k, "subset size");
      else if (opt == "r") sub->add_option("--r", c.r, "edge arity")->capture_default_str();
      else if (opt == "p") sub->add_option("--p", t.p, "retention probability NUM/DEN")->capture_default_str();
      else if (opt == "seeds") sub->add_option("--seeds", t.seeds, "seeds s1,s2,... or a..b")->capture_default_str();
      else if (opt == "budget-ms") sub->add_option("--budget-ms", c.budget_ms, "per-task time budget")->capture_default_str();
      else if (opt == "out") sub->add_option("--out", c.out, "output path (default: standard output)");
      else if (opt == "no-timing") sub->add_flag("--no-timing", c.no_timing, "write NA in the millis column");
      else if (opt == "l") sub->add_option("--l", c.l, "family length")->capture_default_str();
      else if (opt == "t") sub->add_option("--t", c.t, "color count (0: n-2k+1)")->capture_default_str();
      else if (opt == "problem")
        sub->add_option("--problem", c.problem, "chi|chi-hyper|alpha|zeta|colorable|union|sequential-k2")->capture_default_str();
      else if (opt == "in") sub->add_option("--in", c.in, "input family file");
      else if (opt == "search-seed") sub->add_option("--search-seed", c.search_seed, "search seed")->capture_default_str();
      else if (opt == "witness-dir") sub->add_option("--witness-dir", c.witness_dir, "directory for witness files");
      else if (opt == "b") sub->add_option("--b", c.b, "ground bound for the disjoint-pair inequality (0: skip)");
      else if (opt == "h") sub->add_option("--h", c.h, "target base size for sequential-k2");
      else if (opt == "mode") sub->add_option("--mode", t.mode, "exact|heuristic")->capture_default_str();
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw UsageError(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForVersion&) {
    throw UsageError(kToolVersion);
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n" + app.help());
  }

  const auto chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  const auto& t = text[c.command];
  auto* sub = subs[c.command];
  const auto& spec = *find_command(c.command);

  if (has_option(spec, "n-range")) {
    const bool has_n = sub->count("--n") > 0, has_range = sub->count("--n-range") > 0;
    if (has_n && has_range) throw UsageError("give either --n or --n-range");
    if (has_range) std::tie(c.n_lo, c.n_hi) = parse_range(t.n_range);
    else if (has_n) c.n_lo = c.n_hi = t.n;
  }
  if (has_option(spec, "k")) {
    const bool k_optional = c.command == "verify-constructions" || c.command == "families";
    c.k = (k_optional && sub->count("--k") == 0) ? 0 : t.k;
  }
  if (has_option(spec, "p")) {
    try {
      c.p = Probability::parse(t.p);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (has_option(spec, "seeds")) c.seeds = parse_seeds(t.seeds);
  if (has_option(spec, "mode")) {
    if (t.mode == "exact") c.mode = BudgetMode::exact;
    else if (t.mode == "heuristic") c.mode = BudgetMode::heuristic;
    else throw UsageError("mode must be exact or heuristic");
  }
  validate(c);
  return c;
}

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KNESER_LAB_THREADS")) {
    unsigned cap = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
    if (ec == std::errc{} && *ptr == '\0' && cap > 0) n = std::min(n, cap);
  }
  return n;
}

std::int64_t kneser_chromatic_formula(int n, int k, int r) {
  const std::int64_t num = n - static_cast<std::int64_t>(r) * (k - 1);
  if (num <= r - 1) return 1;
  return (num + r - 2) / (r - 1);
}

namespace {

// Result of one task: a CSV row plus the worst status it observed.
struct TaskOutput {
  std::string row;
  int status = kExitOk;
  std::string diagnostic;
};

// Runs tasks on the worker pool; outputs come back in task order.
std::vector<TaskOutput> run_tasks(std::size_t count, const std::function<TaskOutput(std::size_t)>& task) {
  std::vector<TaskOutput> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(count, 1)));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

std::string millis_text(const ExperimentConfig& c, double millis) {
  if (c.no_timing) return "NA";
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << millis;
  return out.str();
}

SolveBudget budget_of(const ExperimentConfig& c, std::uint64_t seed) {
  SolveBudget b;
  b.seconds = static_cast<double>(c.budget_ms) / 1000.0;
  b.mode = c.mode;
  b.seed = seed;
  return b;
}

void write_metadata(std::ostream& os, const ExperimentConfig& c) {
  os << "# " << kToolVersion << '\n';
  os << "# config: " << c.to_string() << '\n';
  os << "# prng: " << kPrngName << '\n';
}

int collect(std::ostream& os, std::ostream& err, const std::vector<TaskOutput>& rows) {
  int status = kExitOk;
  for (const auto& r : rows) {
    os << r.row << '\n';
    if (!r.diagnostic.empty()) err << r.diagnostic << '\n';
    // Verification failures outrank budget exhaustion.
    if (r.status == kExitVerifyFailed || (r.status == kExitBudget && status == kExitOk)) status = r.status;
  }
  return status;
}

std::vector<std::pair<int, std::uint64_t>> grid(const ExperimentConfig& c) {
  std::vector<std::pair<int, std::uint64_t>> cells;
  for (int n = c.n_lo; n <= c.n_hi; ++n)
    for (auto s : c.seeds) cells.emplace_back(n, s);
  return cells;
}

// ---------------------------------------------------------------------------

int cmd_verify_constructions(const ExperimentConfig& c, std::ostream& os, std::ostream& err) {
  os << kVerificationHeader << '\n';
  std::vector<std::function<VerificationRow()>> checks;
  const std::vector<int> ks = c.k == 0 ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{c.k};

  for (int k : ks) {
    if (k > 4) break;
    for (int n = 2 * k; n <= 14; ++n)
      checks.push_back([n, k] {
        const auto col = canonical_coloring(n, k);
        const auto g = full_view({n, k, 2});
        const auto rep = verify_proper(col, g);
        VerificationRow row{"canonical", n, k, 2, std::to_string(col.color_count()), rep.proper ? "true" : "false",
                            std::to_string(rep.violation_count), std::to_string(col.uncolored_count())};
        row.passed = rep.proper && col.color_count() == n - 2 * k + 2;
        return row;
      });
  }
  for (int k : ks) {
    if (k > 4) break;
    for (int n = 2 * k; n <= 14; ++n)
      checks.push_back([n, k] {
        const auto col = merged_canonical(n, k);
        const auto g = full_view({n, k, 2});
        const auto mono = monochromatic_edges(col, g);
        VerificationRow row{"merged-canonical", n, k, 2, std::to_string(col.color_count()), mono == 0 ? "true" : "false",
                            std::to_string(mono), std::to_string(col.uncolored_count())};
        row.passed = mono == binomial(2 * k, k) / 2 && col.color_count() == n - 2 * k + 1;
        return row;
      });
  }
  for (int k : (c.k == 0 ? std::vector<int>{3, 4} : std::vector<int>{c.k})) {
    const int n = 2 * (k - 1) * (k - 1);
    if (k < 3 || k > 4) {
      checks.push_back([n, k] { return VerificationRow{"starfree", n, k, 2, "-", "skipped", "-", "-"}; });
      continue;
    }
    checks.push_back([n, k] {
      const auto col = starfree_coloring(k);
      const auto rep = verify_proper(col, full_view({n, k, 2}));
      bool star_free = true;
      for (int color = 1; color <= col.color_count(); ++color)
        star_free = star_free && !star_center(col.color_class(color)).has_value();
      VerificationRow row{"starfree", n, k, 2, std::to_string(col.color_count()), rep.proper ? "true" : "false",
                          std::to_string(rep.violation_count), std::to_string(col.uncolored_count())};
      row.passed = rep.proper && star_free && col.color_count() == 2 * (k - 2) * (k - 1);
      return row;
    });
  }
  for (int k : (c.k == 0 ? std::vector<int>{2, 3, 4} : std::vector<int>{c.k})) {
    if (k < 1 || k > 4) {
      checks.push_back([k] { return VerificationRow{"triple-block", 3 * k, k, 2, "-", "skipped", "-", "-"}; });
      continue;
    }
    for (int n : {3 * k, 3 * k + 1})
      checks.push_back([n, k] {
        const auto col = triple_block_coloring(n, k);
        const auto mono = monochromatic_edges(col, full_view({n, k, 2}));
        bool intersecting = true;
        for (int color = 1; color <= col.color_count(); ++color)
          intersecting = intersecting && is_intersecting(col.color_class(color));
        std::uint64_t three = 1;
        for (int i = 0; i < k; ++i) three *= 3;
        VerificationRow row{"triple-block", n, k, 2, std::to_string(col.color_count()), mono == 0 ? "true" : "false",
                            std::to_string(mono), std::to_string(col.uncolored_count())};
        row.passed = mono == 0 && intersecting && col.uncolored_count() == three && col.color_count() == n - 2 * k;
        return row;
      });
  }

  auto rows = run_tasks(checks.size(), [&](std::size_t i) {
    const auto row = checks[i]();
    TaskOutput out{to_csv(row), row.passed ? kExitOk : kExitVerifyFailed, ""};
    if (!row.passed) out.diagnostic = "verification failed: " + out.row;
    return out;
  });
  return collect(os, err, rows);
}

int cmd_chi_random(const ExperimentConfig& c, std::ostream& os, std::ostream& err) {
  os << "n,k,r,p_num,p_den,seed,chi_sample,chi_full,gap,optimality,nodes,millis\n";
  const auto cells = grid(c);
  auto rows = run_tasks(cells.size(), [&](std::size_t i) {
    const auto [n, seed] = cells[i];
    const KneserParams params{n, c.k, c.r};
    params.validate();
    const auto g = sample_subgraph(params, c.p, seed);
    const auto v = view(g);
    const auto res = c.r == 2 ? chromatic_number(v, budget_of(c, seed)) : hypergraph_chromatic_number(v, budget_of(c, seed));
    const auto full = kneser_chromatic_formula(n, c.k, c.r);
    std::ostringstream row;
    row << n << ',' << c.k << ',' << c.r << ',' << c.p.num << ',' << c.p.den << ',' << seed << ',' << res.value << ','
        << full << ',' << (full - res.value) << ',' << to_string(res.optimality) << ',' << res.stats.nodes << ','
        << millis_text(c, res.stats.millis);
    TaskOutput out{row.str(), res.proven() ? kExitOk : kExitBudget, ""};
    if (res.lower > full || res.lower < 1 || (res.proven() && res.value > full)) {
      out.status = kExitVerifyFailed;
      out.diagnostic = "sampled chromatic number exceeds the full graph's: " + out.row;
    }
    return out;
  });
  return collect(os, err, rows);
}

int cmd_search_empty(const ExperimentConfig& c, std::ostream& os, std::ostream& err) {
  os << "n,k,r,l,sample_seed,search_seed,found,restarts,millis\n";
  if (!c.witness_dir.empty()) std::filesystem::create_directories(c.witness_dir);
  const auto cells = grid(c);
  auto rows = run_tasks(cells.size(), [&](std::size_t i) {
    const auto [n, seed] = cells[i];
    const KneserParams params{n, c.k, c.r};
    params.validate();
    if (c.r * c.l > n) throw std::invalid_argument("search-empty needs r*l <= n");
    const auto g = sample_subgraph(params, c.p, seed);
    EmptySearchBudget budget;
    budget.seconds = static_cast<double>(c.budget_ms) / 1000.0;
    const auto found = search_empty_family(g, c.l, budget, c.search_seed);
    std::ostringstream row;
    row << n << ',' << c.k << ',' << c.r << ',' << c.l << ',' << seed << ',' << c.search_seed << ','
        << (found.witness ? "true" : "false") << ',' << found.stats.restarts << ',' << millis_text(c, found.stats.millis);
    TaskOutput out{row.str(), kExitOk, ""};
    if (!found.witness) return out;

    bool sound = verify_proper(empty_family_coloring(found.witness->family, params).coloring, view(g)).proper;
    if (!c.witness_dir.empty()) {
      const auto path = std::filesystem::path(c.witness_dir) /
                        ("witness_n" + std::to_string(n) + "_k" + std::to_string(c.k) + "_r" + std::to_string(c.r) +
                         "_l" + std::to_string(c.l) + "_s" + std::to_string(seed) + ".txt");
      {
        std::ofstream f(path);
        found.witness->write(f);
        if (!f) throw std::runtime_error("cannot write " + path.string());
      }
      std::ifstream f(path);
      const auto back = EmptinessWitness::read(f);
      sound = sound && back.family == found.witness->family && is_empty_in(back.family, g);
    }
    if (!sound) {
      out.status = kExitVerifyFailed;
      out.diagnostic = "witness failed re-verification: " + out.row;
    }
    return out;
  });
  return collect(os, err, rows);
}

int cmd_zeta(const ExperimentConfig& c, std::ostream& os, std::ostream& err) {
  os << "n,k,t,ratio,lower,upper,exact,nodes,millis\n";
  auto rows = run_tasks(static_cast<std::size_t>(c.n_hi - c.n_lo + 1), [&](std::size_t i) {
    const int n = c.n_lo + static_cast<int>(i);
    const int t = c.t != 0 ? c.t : n - 2 * c.k + 1;
    if (t < 1) throw std::invalid_argument("zeta needs n >= 2k or an explicit --t");
    const auto res = min_mono_edges(n, c.k, t, budget_of(c, c.search_seed));
    std::ostringstream row;
    row << n << ',' << c.k << ',' << t << ',' << (res.ratio_bound ? res.ratio_bound->to_string() : "NA") << ','
        << res.lower << ',' << res.upper << ',' << (res.proven() ? "true" : "false") << ',' << res.stats.nodes << ','
        << millis_text(c, res.stats.millis);
    TaskOutput out{row.str(), res.proven() ? kExitOk : kExitBudget, ""};
    bool consistent = res.lower <= res.upper;
    if (res.ratio_bound) consistent = consistent && static_cast<std::int64_t>(res.ratio_bound->ceil()) <= res.upper;
    if (n >= 2 * c.k && t == n - 2 * c.k + 1)
      consistent = consistent && res.upper <= static_cast<std::int64_t>(binomial(2 * c.k, c.k) / 2);
    if (!consistent) {
      out.status = kExitVerifyFailed;
      out.diagnostic = "inconsistent zeta bounds: " + out.row;
    }
    return out;
  });
  return collect(os, err, rows);
}

int cmd_solve(const ExperimentConfig& c, std::ostream& os, std::ostream& err) {
  os << kSolverCsvHeader << '\n';
  const bool sampled = c.problem == "chi" || c.problem == "chi-hyper" || c.problem == "alpha" || c.problem == "sequential-k2";
  const auto cells = grid(c);
  auto rows = run_tasks(cells.size(), [&](std::size_t i) {
    const auto [n, seed] = cells[i];
    const int r = (c.problem == "chi-hyper" || c.problem == "sequential-k2") ? c.r : 2;
    const KneserParams params{n, c.k, sampled ? r : 2};
    params.validate();
    const auto budget = budget_of(c, seed);
    const int t = c.t != 0 ? c.t : n - 2 * c.k + 1;
    bool uses_t = false;
    SolveResult res;
    if (c.problem == "chi") {
      res = chromatic_number(view(sample_subgraph(params, c.p, seed)), budget);
    } else if (c.problem == "chi-hyper") {
      res = hypergraph_chromatic_number(view(sample_subgraph(params, c.p, seed)), budget);
    } else if (c.problem == "alpha") {
      res = independence_number(view(sample_subgraph(params, c.p, seed)), budget);
    } else if (c.problem == "sequential-k2") {
      if (c.h < 2) throw std::invalid_argument("sequential-k2 needs --h >= 2");
      EmptySearchBudget eb;
      eb.seconds = budget.seconds;
      eb.max_restarts = 64;
      const auto start = std::chrono::steady_clock::now();
      const auto build = sequential_k2_build(sample_subgraph(params, c.p, seed), c.h, eb, c.search_seed);
      res.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      res.optimality = Optimality::bound_only;
      res.value = build ? build->coloring.color_count() : -1;
      res.stats.nodes = build ? build->attempts : 0;
    } else {
      uses_t = true;
      if (t < 1) throw std::invalid_argument("this problem needs a positive color count");
      if (c.problem == "zeta") res = min_mono_edges(n, c.k, t, budget);
      else if (c.problem == "colorable") res = max_colorable_subset(n, c.k, t, budget);
      else res = union_of_stars_cover_search(n, c.k, t, budget);
    }
    std::ostringstream row;
    row << c.problem << ',' << n << ',' << c.k << ',' << params.r << ',' << (uses_t ? std::to_string(t) : "NA") << ',';
    if (sampled) row << c.p.num << ',' << c.p.den << ',';
    else row << "NA,NA,";
    row << seed << ',' << res.value << ',' << to_string(res.optimality) << ',' << res.stats.nodes << ','
        << millis_text(c, res.stats.millis);
    // A sequential build is a construction, not an optimization: it never exhausts a budget.
    const bool budget_hit = !res.proven() && c.problem != "sequential-k2";
    return TaskOutput{row.str(), budget_hit ? kExitBudget : kExitOk, ""};
  });
  return collect(os, err, rows);
}

int cmd_sample(const ExperimentConfig& c, std::ostream& os) {
  const KneserParams params{c.n_lo, c.k, c.r};
  params.validate();
  sample_subgraph(params, c.p, c.seeds.front()).write(os);
  return kExitOk;
}

int cmd_families(const ExperimentConfig& c, std::ostream& os) {
  std::ifstream in(c.in);
  if (!in) throw std::invalid_argument("cannot open family file '" + c.in + "'");
  const auto f = read_family(in, c.n_lo, c.k == 0 ? std::nullopt : std::optional<int>(c.k));
  const auto report = intersecting_report(f);
  const auto center = star_center(f);
  std::string high;
  for (Mask m = high_degree_set(f); m; m &= m - 1) {
    if (!high.empty()) high += ' ';
    high += std::to_string(std::countr_zero(m) + 1);
  }
  os << "metric,value\n";
  os << "size," << f.size() << '\n';
  os << "k," << f.k() << '\n';
  os << "intersecting," << (is_intersecting(f) ? "true" : "false") << '\n';
  os << "star_center," << (center ? std::to_string(*center + 1) : "NA") << '\n';
  os << "max_degree," << f.max_degree() << '\n';
  os << "diversity," << diversity(f) << '\n';
  os << "disjoint_pairs," << disjoint_pairs(f) << '\n';
  os << "largest_intersecting," << report.size << '\n';
  os << "ell," << report.ell << '\n';
  os << "intersecting_mode," << to_string(report.mode) << '\n';
  os << "high_degree_set,{" << high << "}\n";
  if (c.b > 0) {
    const auto p = check_prop31(f, c.b);
    os << "prop31_applicable," << (p.applicable ? "true" : "false") << '\n';
    os << "prop31_holds," << (p.holds ? "true" : "false") << '\n';
    os << "prop31_lhs," << p.lhs << '\n';
    os << "prop31_rhs," << p.rhs << '\n';
    if (p.applicable && !p.holds) return kExitVerifyFailed;
  }
  return kExitOk;
}

}  // namespace

int run_experiment(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  validate(c);
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw std::invalid_argument("cannot open output file '" + c.out + "'");
    os = &file;
  }
  if (c.command == "sample") return cmd_sample(c, *os);
  write_metadata(*os, c);
  if (c.command == "verify-constructions") return cmd_verify_constructions(c, *os, err);
  if (c.command == "chi-random") return cmd_chi_random(c, *os, err);
  if (c.command == "search-empty") return cmd_search_empty(c, *os, err);
  if (c.command == "zeta") return cmd_zeta(c, *os, err);
  if (c.command == "solve") return cmd_solve(c, *os, err);
  if (c.command == "families") return cmd_families(c, *os);
  throw std::invalid_argument("unknown command '" + c.command + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = parse_config(args);
  } catch (const UsageError& e) {
    const std::string msg = e.what();
    // Help and version requests are not errors.
    if (std::find(args.begin(), args.end(), "--help") != args.end() ||
        std::find(args.begin(), args.end(), "--version") != args.end()) {
      out << msg << '\n';
      return kExitOk;
    }
    err << "error: " << msg << '\n';
    return kExitUsage;
  }
  try {
    return run_experiment(config, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UndefinedError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}

}  // namespace kneser
