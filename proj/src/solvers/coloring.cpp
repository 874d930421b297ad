// Exact chromatic number (graphs and r-uniform hypergraphs) and independence number.

#include <algorithm>
#include <stdexcept>

#include "internal.hpp"
#include "kneser/errors.hpp"

namespace kneser {

const char* to_string(BudgetMode mode) { return mode == BudgetMode::exact ? "exact" : "heuristic"; }
const char* to_string(Optimality optimality) { return optimality == Optimality::proven ? "proven" : "bound-only"; }

void SolveBudget::validate() const {
  if (node_limit == 0) throw std::invalid_argument("node limit must be positive");
  if (!(seconds > 0)) throw std::invalid_argument("time limit must be positive");
}

namespace {

enum class Decision { colorable, infeasible, aborted };

// Decides t-colorability of an r-uniform view. A color c is forbidden for u
// once r-1 vertices of some edge through u carry c, so a completed assignment
// never has a monochromatic edge. Branching picks the vertex with the most
// forbidden colors (DSATUR), ties by degree then index; new colors are opened
// only as max_used + 1.
class ExactColorer {
public:
  ExactColorer(const GraphView& g, SearchLimit& limit) : g_(g), limit_(limit), n_(g.vertex_count()) {}

  Decision decide(int t, const std::vector<std::uint32_t>& precolored, std::vector<int>& out) {
    if (n_ == 0) {
      out.clear();
      return Decision::colorable;
    }
    if (t <= 0) return Decision::infeasible;
    if (static_cast<int>(precolored.size()) > t) return Decision::infeasible;
    reset(t);
    int used = 0;
    for (auto v : precolored) {
      if (forbidden(v, used + 1)) return Decision::infeasible;
      assign(v, ++used);
    }
    const bool found = search(static_cast<int>(precolored.size()), used);
    if (found) {
      out = color_;
      return Decision::colorable;
    }
    return limit_.hit() ? Decision::aborted : Decision::infeasible;
  }

  /// One greedy DSATUR pass with unbounded colors.
  std::vector<int> greedy() {
    reset(static_cast<int>(n_));
    for (std::size_t step = 0; step < n_; ++step) {
      const auto v = select();
      int c = 1;
      while (forbidden(v, c)) ++c;
      assign(v, c);
    }
    return color_;
  }

private:
  void reset(int t) {
    t_ = t;
    color_.assign(n_, 0);
    forbid_.assign(n_ * static_cast<std::size_t>(t + 1), 0);
    sat_.assign(n_, 0);
    trail_.clear();
  }

  bool forbidden(std::size_t v, int c) const { return forbid_[v * static_cast<std::size_t>(t_ + 1) + static_cast<std::size_t>(c)] > 0; }

  void forbid(std::size_t u, int c) {
    auto& slot = forbid_[u * static_cast<std::size_t>(t_ + 1) + static_cast<std::size_t>(c)];
    if (slot++ == 0) ++sat_[u];
    trail_.emplace_back(static_cast<std::uint32_t>(u), c);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [u, c] = trail_.back();
      trail_.pop_back();
      auto& slot = forbid_[u * static_cast<std::size_t>(t_ + 1) + static_cast<std::size_t>(c)];
      if (--slot == 0) --sat_[u];
    }
  }

  void assign(std::size_t v, int c) {
    color_[v] = c;
    const int r = g_.arity();
    for (auto e : g_.incident_edges(v)) {
      int same = 0;
      std::size_t open = n_;
      int open_count = 0;
      for (auto u : g_.edge(e)) {
        if (color_[u] == c)
          ++same;
        else if (color_[u] == 0) {
          open = u;
          ++open_count;
        }
      }
      if (same == r - 1 && open_count == 1 && c <= t_) forbid(open, c);
    }
  }

  std::size_t select() const {
    std::size_t best = n_;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] != 0) continue;
      if (best == n_ || sat_[v] > sat_[best] || (sat_[v] == sat_[best] && g_.degree(v) > g_.degree(best))) best = v;
    }
    return best;
  }

  bool search(int colored, int max_used) {
    if (static_cast<std::size_t>(colored) == n_) return true;
    if (limit_.tick()) return false;
    const auto v = select();
    if (sat_[v] >= t_) return false;
    const int top = std::min(t_, max_used + 1);
    for (int c = 1; c <= top; ++c) {
      if (forbidden(v, c)) continue;
      const auto mark = trail_.size();
      assign(v, c);
      if (search(colored + 1, std::max(max_used, c))) return true;
      undo_to(mark);
      color_[v] = 0;
      if (limit_.hit()) return false;
    }
    return false;
  }

  const GraphView& g_;
  SearchLimit& limit_;
  std::size_t n_;
  int t_ = 0;
  std::vector<int> color_;
  std::vector<int> forbid_;
  std::vector<int> sat_;
  std::vector<std::pair<std::uint32_t, int>> trail_;
};

SolveResult solve_chromatic(const GraphView& g, const SolveBudget& budget, bool use_clique) {
  detail::Stopwatch watch;
  auto limit = detail::limit_for(budget);
  SolveResult result;
  const auto n = static_cast<std::int64_t>(g.vertex_count());

  if (n == 0) {
    result.optimality = Optimality::proven;
    result.coloring = detail::lift_coloring(g, {}, 0, "solver");
    detail::finish(result, limit, watch, budget);
    return result;
  }

  ExactColorer colorer(g, limit);
  std::vector<int> best = colorer.greedy();
  std::int64_t upper = *std::max_element(best.begin(), best.end());

  std::vector<std::uint32_t> clique;
  std::int64_t lower = g.edge_count() > 0 ? 2 : 1;
  if (use_clique) {
    auto found = max_clique(detail::adjacency_rows(g), limit);
    clique = std::move(found.clique);
    lower = std::max<std::int64_t>(lower, static_cast<std::int64_t>(clique.size()));
  }

  bool aborted = limit.hit();
  if (budget.mode == BudgetMode::exact) {
    for (std::int64_t t = upper - 1; t >= lower && !aborted; --t) {
      std::vector<int> colors;
      switch (colorer.decide(static_cast<int>(t), clique, colors)) {
        case Decision::colorable:
          best = std::move(colors);
          upper = *std::max_element(best.begin(), best.end());
          t = upper;  // loop decrement continues below the new upper bound
          break;
        case Decision::infeasible:
          lower = t + 1;
          break;
        case Decision::aborted:
          aborted = true;
          break;
      }
      if (lower == upper) break;
    }
  }

  result.value = upper;
  result.upper = upper;
  result.lower = lower;
  result.optimality = (lower == upper) ? Optimality::proven : Optimality::bound_only;
  result.coloring = detail::lift_coloring(g, best, static_cast<int>(upper), "solver");
  if (!verify_proper(*result.coloring, g).proper) throw std::logic_error("chromatic solver produced an improper coloring");
  detail::finish(result, limit, watch, budget);
  return result;
}

}  // namespace

std::vector<int> dsatur_greedy(const GraphView& g) {
  auto limit = SearchLimit::unlimited();
  return ExactColorer(g, limit).greedy();
}

SolveResult chromatic_number(const GraphView& g, const SolveBudget& budget) {
  if (g.arity() != 2) throw UnsupportedError("chromatic_number expects a graph; use hypergraph_chromatic_number for r >= 3");
  return solve_chromatic(g, budget, true);
}

SolveResult hypergraph_chromatic_number(const GraphView& g, const SolveBudget& budget) {
  return solve_chromatic(g, budget, g.arity() == 2);
}

SolveResult independence_number(const GraphView& g, const SolveBudget& budget) {
  if (g.arity() != 2) throw UnsupportedError("independence_number expects a graph (r = 2)");
  detail::Stopwatch watch;
  auto limit = detail::limit_for(budget);
  SolveResult result;
  auto found = max_clique(complement(detail::adjacency_rows(g)), limit);
  for (auto v : found.clique) result.vertices.push_back(g.rank(v));
  for (std::size_t i = 0; i < found.clique.size(); ++i)
    for (std::size_t j = i + 1; j < found.clique.size(); ++j)
      if (g.adjacent(found.clique[i], found.clique[j])) throw std::logic_error("independent set witness has an edge");
  result.value = static_cast<std::int64_t>(found.clique.size());
  result.lower = result.value;
  result.upper = found.complete ? result.value : static_cast<std::int64_t>(g.vertex_count());
  result.optimality = found.complete ? Optimality::proven : Optimality::bound_only;
  detail::finish(result, limit, watch, budget);
  return result;
}

}  // namespace kneser
