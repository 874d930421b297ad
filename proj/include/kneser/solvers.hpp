#pragma once

// Exact desk-scale solvers.
//
// Every solver takes a SolveBudget; when the node or time limit is hit the
// result is marked bound_only and carries the best lower/upper pair found.
// Certificates (colorings, vertex sets) are always checked before return.

#include <cstdint>
#include <optional>
#include <vector>

#include "kneser/colorings.hpp"
#include "kneser/kneser.hpp"

namespace kneser {

enum class BudgetMode { exact, heuristic };
enum class Optimality { proven, bound_only };

const char* to_string(BudgetMode mode);
const char* to_string(Optimality optimality);

struct SolveBudget {
  std::uint64_t node_limit = 500'000'000;
  double seconds = 300.0;
  BudgetMode mode = BudgetMode::exact;
  std::uint64_t seed = 0;

  /// invalid_argument unless both limits are positive.
  void validate() const;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  double millis = 0.0;
  std::uint64_t seed = 0;
  BudgetMode mode = BudgetMode::exact;
};

struct SolveResult {
  std::int64_t value = 0;  // best value found
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  Optimality optimality = Optimality::bound_only;
  std::optional<Coloring> coloring;     // color certificate (partial outside the solved view)
  std::vector<std::uint64_t> vertices;  // vertex-set certificate, colex ranks
  SolveStats stats;
  std::optional<Rational> ratio_bound;   // min_mono_edges: averaging lower bound
  std::int64_t construction_bound = -1;  // max_colorable_subset: explicit-construction value

  bool proven() const { return optimality == Optimality::proven; }
};

/// Graph chromatic number (r = 2) by DSATUR branch and bound; UnsupportedError otherwise.
SolveResult chromatic_number(const GraphView& g, const SolveBudget& budget = {});

/// Chromatic number of an r-uniform view: no edge may have all r vertices in one color.
SolveResult hypergraph_chromatic_number(const GraphView& g, const SolveBudget& budget = {});

/// Independence number (r = 2) via maximum clique in the complement.
SolveResult independence_number(const GraphView& g, const SolveBudget& budget = {});

/// Fewest monochromatic edges over t-colorings of the full KG_{n,k}.
/// Exact mode is branch and bound with an edge-disjoint odd-cycle bound for
/// t = 2; heuristic mode is seeded simulated annealing. The incumbent starts
/// from merged_canonical when t = n-2k+1.
SolveResult min_mono_edges(int n, int k, int t, const SolveBudget& budget = {});

inline constexpr std::uint64_t kExactColorableLimit = 20;

/// Largest vertex subset of KG_{n,k} whose induced subgraph is properly
/// t-colorable. Exact for C(n,k) <= 20 in exact mode, otherwise a seeded local
/// search seeded from the explicit constructions.
SolveResult max_colorable_subset(int n, int k, int t, const SolveBudget& budget = {});

/// Value of the best explicit construction for max_colorable_subset: t stars,
/// the triple-block coloring when t >= n-2k and n >= 3k, or everything when t >= n-2k+2.
std::int64_t colorable_construction_bound(int n, int k, int t);

/// Largest union of t intersecting families in C([n],k), by enumerating the
/// maximal intersecting families. SizeError unless C(n,k) <= 20 and t <= 4.
SolveResult union_of_stars_cover_search(int n, int k, int t, const SolveBudget& budget = {});

/// Greedy upper bound used to seed the exact chromatic search.
std::vector<int> dsatur_greedy(const GraphView& g);

/// Solver CSV header: `op,n,k,r,t,p_num,p_den,seed,value,optimality,nodes,millis`.
inline constexpr const char* kSolverCsvHeader = "op,n,k,r,t,p_num,p_den,seed,value,optimality,nodes,millis";

}  // namespace kneser
