#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "kneser/clique.hpp"
#include "kneser/solvers.hpp"

namespace kneser::detail {

class Stopwatch {
public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline SearchLimit limit_for(const SolveBudget& budget) {
  budget.validate();
  return SearchLimit(budget.node_limit, budget.seconds);
}

inline void finish(SolveResult& result, const SearchLimit& limit, const Stopwatch& watch, const SolveBudget& budget) {
  result.stats.nodes = limit.nodes();
  result.stats.millis = watch.millis();
  result.stats.seed = budget.seed;
  result.stats.mode = budget.mode;
}

/// Lifts colors of the view's local vertices (1..t) to a coloring of all of C([n],k).
inline Coloring lift_coloring(const GraphView& g, const std::vector<int>& local, int t, const std::string& provenance) {
  std::vector<int> by_rank(g.params().vertex_count(), 0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) by_rank[g.rank(v)] = local[v];
  return Coloring(g.params(), t, std::move(by_rank), provenance);
}

inline std::vector<DynBitset> adjacency_rows(const GraphView& g) {
  std::vector<DynBitset> rows;
  rows.reserve(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) rows.push_back(g.neighbors(v));
  return rows;
}

}  // namespace kneser::detail
