// Largest properly t-colorable vertex subsets of KG_{n,k} and largest unions of
// t intersecting families.

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "internal.hpp"
#include "kneser/errors.hpp"
#include "kneser/random.hpp"

namespace kneser {
namespace {

// Partial coloring (0 = dropped) of the full graph from the best explicit construction.
std::vector<int> construction_coloring(const GraphView& g, int n, int k, int t) {
  std::vector<int> local(g.vertex_count(), 0);
  if (n < 2 * k) {
    std::fill(local.begin(), local.end(), 1);  // no edges
    return local;
  }
  if (t >= n - 2 * k + 2) {
    const auto c = canonical_coloring(n, k);
    for (std::size_t v = 0; v < local.size(); ++v) local[v] = c.color(g.rank(v));
    return local;
  }
  std::int64_t stars_value = 0;
  std::vector<int> stars(local.size(), 0);
  for (std::size_t v = 0; v < local.size(); ++v)
    if (g.vertex(v).min_element() < t) {
      stars[v] = g.vertex(v).min_element() + 1;
      ++stars_value;
    }
  if (t >= n - 2 * k && n >= 3 * k) {
    const auto c = triple_block_coloring(n, k);
    std::vector<int> blocks(local.size(), 0);
    std::int64_t value = 0;
    for (std::size_t v = 0; v < local.size(); ++v) {
      blocks[v] = c.color(g.rank(v));
      value += blocks[v] != 0;
    }
    if (value > stars_value) return blocks;
  }
  return stars;
}

bool proper_partial(const GraphView& g, const std::vector<int>& local) {
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto uv = g.edge(e);
    if (local[uv[0]] != 0 && local[uv[0]] == local[uv[1]]) return false;
  }
  return true;
}

class ColorableSearch {
public:
  ColorableSearch(const GraphView& g, int t, SearchLimit& limit) : g_(g), n_(g.vertex_count()), t_(t), limit_(limit) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0u);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return g.degree(a) > g.degree(b); });
    color_.assign(n_, 0);
    count_.assign(n_ * static_cast<std::size_t>(t_ + 1), 0);
  }

  bool run(std::vector<int>& best, std::int64_t& best_value) {
    best_ = &best;
    best_value_ = best_value;
    search(0, 0, 0);
    best_value = best_value_;
    return !limit_.hit();
  }

private:
  int& count(std::size_t v, int c) { return count_[v * static_cast<std::size_t>(t_ + 1) + static_cast<std::size_t>(c)]; }

  // Undecided vertices that still have an allowed color.
  std::int64_t open_bound(std::size_t depth) {
    std::int64_t b = 0;
    for (std::size_t i = depth; i < n_; ++i) {
      const auto v = order_[i];
      for (int c = 1; c <= t_; ++c)
        if (count(v, c) == 0) {
          ++b;
          break;
        }
    }
    return b;
  }

  void place(std::uint32_t v, int c, int delta) {
    const auto& row = g_.neighbors(v);
    for (std::size_t u = row.find_first(); u < n_; u = row.find_next(u + 1)) count(u, c) += delta;
  }

  void search(std::size_t depth, std::int64_t colored, int max_used) {
    if (limit_.tick()) return;
    if (colored + open_bound(depth) <= best_value_) return;
    if (depth == n_) {
      best_value_ = colored;
      *best_ = color_;
      return;
    }
    const auto v = order_[depth];
    const int top = std::min(t_, max_used + 1);
    for (int c = 1; c <= top; ++c) {
      if (count(v, c) != 0) continue;
      color_[v] = c;
      place(v, c, +1);
      search(depth + 1, colored + 1, std::max(max_used, c));
      place(v, c, -1);
      color_[v] = 0;
      if (limit_.hit()) return;
    }
    search(depth + 1, colored, max_used);
  }

  const GraphView& g_;
  std::size_t n_;
  int t_;
  SearchLimit& limit_;
  std::vector<std::uint32_t> order_;
  std::vector<int> color_;
  std::vector<int> count_;
  std::vector<int>* best_ = nullptr;
  std::int64_t best_value_ = 0;
};

// Seeded local search: insert dropped vertices into conflict-free colors, and
// occasionally swap one in against its single conflicting neighbour.
std::int64_t improve_colorable(const GraphView& g, int t, std::vector<int>& local, std::uint64_t seed,
                               SearchLimit& limit) {
  const std::size_t n = g.vertex_count();
  std::vector<int> conflict(n * static_cast<std::size_t>(t + 1), 0);
  auto at = [&](std::size_t v, int c) -> int& { return conflict[v * static_cast<std::size_t>(t + 1) + static_cast<std::size_t>(c)]; };
  auto place = [&](std::size_t v, int c, int delta) {
    const auto& row = g.neighbors(v);
    for (std::size_t u = row.find_first(); u < n; u = row.find_next(u + 1)) at(u, c) += delta;
  };
  std::int64_t value = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (local[v]) {
      place(v, local[v], +1);
      ++value;
    }
  std::int64_t best = value;
  std::vector<int> best_local = local;
  Xoshiro256 rng(seed);
  for (int step = 0; step < 100'000; ++step) {
    if (limit.tick()) break;
    const auto v = static_cast<std::size_t>(rng.below(n));
    if (local[v]) continue;
    const int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(t))) + 1;
    if (at(v, c) == 0) {
      local[v] = c;
      place(v, c, +1);
      ++value;
    } else if (at(v, c) == 1) {
      const auto& row = g.neighbors(v);
      for (std::size_t u = row.find_first(); u < n; u = row.find_next(u + 1))
        if (local[u] == c) {
          place(u, c, -1);
          local[u] = 0;
          break;
        }
      local[v] = c;
      place(v, c, +1);
    }
    if (value > best) {
      best = value;
      best_local = local;
    }
  }
  local = std::move(best_local);
  return best;
}

std::int64_t count_colored(const std::vector<int>& local) {
  return std::count_if(local.begin(), local.end(), [](int c) { return c != 0; });
}

}  // namespace

std::int64_t colorable_construction_bound(int n, int k, int t) {
  const KneserParams params{n, k, 2};
  params.validate();
  if (t < 1) throw std::invalid_argument("color count must be positive");
  const auto total = static_cast<std::int64_t>(binomial(n, k));
  if (n < 2 * k || t >= n - 2 * k + 2) return total;
  std::int64_t best = total - static_cast<std::int64_t>(binomial(std::max(n - t, 0), k));
  if (t >= n - 2 * k && n >= 3 * k) {
    std::int64_t three = 1;
    for (int i = 0; i < k; ++i) three *= 3;
    best = std::max(best, total - three);
  }
  return best;
}

SolveResult max_colorable_subset(int n, int k, int t, const SolveBudget& budget) {
  const KneserParams params{n, k, 2};
  params.validate();
  if (t < 1) throw std::invalid_argument("color count must be positive");
  detail::Stopwatch watch;
  auto limit = detail::limit_for(budget);
  const auto g = full_view(params);
  const auto total = static_cast<std::int64_t>(g.vertex_count());

  SolveResult result;
  result.construction_bound = colorable_construction_bound(n, k, t);
  std::vector<int> best = construction_coloring(g, n, k, t);
  std::int64_t value = count_colored(best);
  if (value != result.construction_bound) throw std::logic_error("construction coloring disagrees with its bound");

  bool proven = value == total;
  const bool exact = budget.mode == BudgetMode::exact && g.vertex_count() <= kExactColorableLimit;
  if (!proven) {
    std::vector<int> improved = best;
    auto local_limit = SearchLimit(budget.node_limit, budget.seconds);
    const auto v = improve_colorable(g, t, improved, budget.seed, local_limit);
    if (v > value) {
      value = v;
      best = std::move(improved);
    }
    if (exact) proven = ColorableSearch(g, t, limit).run(best, value);
  }
  // Fewer than n-2k+2 colors cannot cover everything.
  const std::int64_t ceiling = (n >= 2 * k && t < n - 2 * k + 2) ? total - 1 : total;

  result.value = value;
  result.lower = value;
  result.upper = proven ? value : ceiling;
  result.optimality = (proven || value == ceiling) ? Optimality::proven : Optimality::bound_only;
  if (!proper_partial(g, best)) throw std::logic_error("colorable subset certificate is not proper");
  result.coloring = detail::lift_coloring(g, best, t, "solver");
  for (std::size_t v = 0; v < best.size(); ++v)
    if (best[v]) result.vertices.push_back(g.rank(v));
  detail::finish(result, limit, watch, budget);
  return result;
}

SolveResult union_of_stars_cover_search(int n, int k, int t, const SolveBudget& budget) {
  const KneserParams params{n, k, 2};
  params.validate();
  if (t < 1) throw std::invalid_argument("family count must be positive");
  if (binomial(n, k) > 20 || t > 4) throw SizeError("cover search limited to C(n,k) <= 20 and t <= 4");
  detail::Stopwatch watch;
  auto limit = detail::limit_for(budget);
  const auto g = full_view(params);
  const std::size_t vcount = g.vertex_count();

  // Non-adjacency (intersection) masks; maximal intersecting families are the
  // maximal cliques of this relation.
  std::vector<std::uint32_t> meets(vcount, 0);
  for (std::size_t u = 0; u < vcount; ++u)
    for (std::size_t v = 0; v < vcount; ++v)
      if (u != v && !g.adjacent(u, v)) meets[u] |= std::uint32_t{1} << v;

  std::vector<std::uint32_t> maximal;
  auto bron_kerbosch = [&](auto&& self, std::uint32_t R, std::uint32_t P, std::uint32_t X) -> void {
    if (limit.tick()) return;
    if (!P && !X) {
      maximal.push_back(R);
      return;
    }
    const std::uint32_t pivot_pool = P | X;
    const int pivot = std::countr_zero(pivot_pool);
    for (std::uint32_t cand = P & ~meets[static_cast<std::size_t>(pivot)]; cand; cand &= cand - 1) {
      const int v = std::countr_zero(cand);
      const std::uint32_t bit = std::uint32_t{1} << v;
      self(self, R | bit, P & meets[static_cast<std::size_t>(v)], X & meets[static_cast<std::size_t>(v)]);
      P &= ~bit;
      X |= bit;
    }
  };
  const std::uint32_t everything = vcount >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << vcount) - 1);
  if (vcount > 0) bron_kerbosch(bron_kerbosch, 0, everything, 0);

  std::sort(maximal.begin(), maximal.end(),
            [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) > std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b); });

  std::uint32_t best_union = 0;
  std::vector<std::size_t> best_pick, pick;
  auto choose = [&](auto&& self, std::size_t start, int left, std::uint32_t acc) -> void {
    if (limit.tick()) return;
    if (std::popcount(acc) > std::popcount(best_union)) {
      best_union = acc;
      best_pick = pick;
    }
    if (left == 0 || acc == everything) return;
    for (std::size_t i = start; i < maximal.size(); ++i) {
      // families sorted by size: the remaining picks add at most left * |family i|
      if (std::popcount(acc) + left * std::popcount(maximal[i]) <= std::popcount(best_union)) break;
      pick.push_back(i);
      self(self, i + 1, left - 1, acc | maximal[i]);
      pick.pop_back();
    }
  };
  choose(choose, 0, t, 0);

  // Certificate: each covered vertex takes the first chosen family containing it.
  std::vector<int> local(vcount, 0);
  for (std::size_t j = 0; j < best_pick.size(); ++j)
    for (std::uint32_t m = maximal[best_pick[j]]; m; m &= m - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(m));
      if (local[v] == 0) local[v] = static_cast<int>(j) + 1;
    }
  if (!proper_partial(g, local)) throw std::logic_error("cover certificate has a non-intersecting family");

  SolveResult result;
  result.value = std::popcount(best_union);
  result.lower = result.value;
  result.upper = limit.hit() ? static_cast<std::int64_t>(vcount) : result.value;
  result.optimality = limit.hit() ? Optimality::bound_only : Optimality::proven;
  result.coloring = detail::lift_coloring(g, local, t, "solver");
  for (std::size_t v = 0; v < vcount; ++v)
    if (local[v]) result.vertices.push_back(g.rank(v));
  detail::finish(result, limit, watch, budget);
  return result;
}

}  // namespace kneser
