// Minimum number of monochromatic edges over t-colorings of KG_{n,k}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "internal.hpp"
#include "kneser/errors.hpp"
#include "kneser/random.hpp"

namespace kneser {
namespace {

using Cycle = std::vector<std::uint32_t>;

// Shortest odd cycle through BFS layers of the graph restricted to `alive` edges.
std::optional<Cycle> shortest_odd_cycle(const std::vector<std::vector<std::uint32_t>>& adj,
                                        const std::vector<std::vector<char>>& alive, std::uint32_t root) {
  const std::size_t n = adj.size();
  std::vector<int> dist(n, -1);
  std::vector<std::uint32_t> parent(n, 0);
  std::queue<std::uint32_t> queue;
  dist[root] = 0;
  queue.push(root);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop();
    for (std::size_t i = 0; i < adj[u].size(); ++i) {
      if (!alive[u][i]) continue;
      const auto v = adj[u][i];
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        parent[v] = u;
        queue.push(v);
      } else if (dist[v] == dist[u] && u < v) {
        // Equal-depth tree paths up to their meeting point plus (u, v): odd length.
        std::vector<std::uint32_t> left{u}, right{v};
        while (left.back() != right.back()) {
          left.push_back(parent[left.back()]);
          right.push_back(parent[right.back()]);
        }
        Cycle cycle(left.begin(), left.end());
        for (std::size_t j = right.size() - 1; j-- > 0;) cycle.push_back(right[j]);
        return cycle;
      }
    }
  }
  return std::nullopt;
}

// Greedy packing of edge-disjoint odd cycles; best of several seeded root orders.
std::vector<Cycle> pack_odd_cycles(const GraphView& g, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto uv = g.edge(e);
    adj[uv[0]].push_back(uv[1]);
    adj[uv[1]].push_back(uv[0]);
  }
  auto slot = [&](std::uint32_t u, std::uint32_t v) {
    return static_cast<std::size_t>(std::find(adj[u].begin(), adj[u].end(), v) - adj[u].begin());
  };

  Xoshiro256 rng(seed);
  std::vector<Cycle> best;
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<std::vector<char>> alive(n);
    for (std::size_t u = 0; u < n; ++u) alive[u].assign(adj[u].size(), 1);
    std::vector<std::uint32_t> roots(n);
    std::iota(roots.begin(), roots.end(), 0u);
    if (attempt > 0) shuffle(roots, rng);
    std::vector<Cycle> packing;
    bool progress = true;
    while (progress) {
      progress = false;
      std::optional<Cycle> shortest;
      for (auto root : roots) {
        auto c = shortest_odd_cycle(adj, alive, root);
        if (c && (!shortest || c->size() < shortest->size())) shortest = std::move(c);
        if (shortest && attempt > 0) break;  // randomized attempts take the first cycle found
      }
      if (!shortest) break;
      const auto& c = *shortest;
      for (std::size_t i = 0; i < c.size(); ++i) {
        const auto u = c[i], v = c[(i + 1) % c.size()];
        alive[u][slot(u, v)] = 0;
        alive[v][slot(v, u)] = 0;
      }
      packing.push_back(c);
      progress = true;
    }
    if (packing.size() > best.size()) best = std::move(packing);
  }
  return best;
}

class MonoBranchAndBound {
public:
  MonoBranchAndBound(const GraphView& g, int t, std::vector<Cycle> cycles, SearchLimit& limit)
      : n_(g.vertex_count()), t_(t), cycles_(std::move(cycles)), limit_(limit) {
    // Split edges: those on packed cycles are bounded per cycle, the rest per vertex.
    std::vector<std::vector<char>> on_cycle(n_, std::vector<char>(n_, 0));
    for (const auto& c : cycles_)
      for (std::size_t i = 0; i < c.size(); ++i) {
        const auto u = c[i], v = c[(i + 1) % c.size()];
        on_cycle[u][v] = on_cycle[v][u] = 1;
      }
    rest_.resize(n_);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      auto uv = g.edge(e);
      if (on_cycle[uv[0]][uv[1]]) continue;
      rest_[uv[0]].push_back(uv[1]);
      rest_[uv[1]].push_back(uv[0]);
    }
    order_ = branching_order(g);
    color_.assign(n_, 0);
    count_.assign(n_ * static_cast<std::size_t>(t_ + 1), 0);
  }

  // Searches for colorings with fewer than `incumbent` monochromatic edges.
  // Returns true when the search space was exhausted.
  bool run(std::int64_t incumbent, std::vector<int>& best_colors, std::int64_t& best_value) {
    best_value_ = incumbent;
    best_ = &best_colors;
    root_bound_ = bound(0);
    search(0, 0, 0);
    best_value = best_value_;
    return !limit_.hit();
  }

  std::int64_t root_bound() const { return root_bound_; }

private:
  // Each next vertex has the most already-placed neighbours (ties: lowest index).
  static std::vector<std::uint32_t> branching_order(const GraphView& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> order;
    std::vector<int> placed_nbrs(n, 0);
    std::vector<char> placed(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t pick = n;
      for (std::size_t v = 0; v < n; ++v)
        if (!placed[v] && (pick == n || placed_nbrs[v] > placed_nbrs[pick])) pick = v;
      placed[pick] = 1;
      order.push_back(static_cast<std::uint32_t>(pick));
      for (std::size_t u = g.neighbors(pick).find_first(); u < n; u = g.neighbors(pick).find_next(u + 1))
        ++placed_nbrs[u];
    }
    return order;
  }

  int& count(std::size_t v, int c) { return count_[v * static_cast<std::size_t>(t_ + 1) + static_cast<std::size_t>(c)]; }

  // Fewest monochromatic edges on a cycle given the fixed colors (0 = free).
  std::int64_t cycle_min(const Cycle& c) const {
    const std::size_t len = c.size();
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> cur(static_cast<std::size_t>(t_ + 1)), next(static_cast<std::size_t>(t_ + 1));
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    auto allowed = [&](std::uint32_t v, int col) { return color_[v] == 0 || color_[v] == col; };
    for (int first = 1; first <= t_; ++first) {
      if (!allowed(c[0], first)) continue;
      std::fill(cur.begin(), cur.end(), inf);
      cur[static_cast<std::size_t>(first)] = 0;
      for (std::size_t i = 1; i < len; ++i) {
        std::fill(next.begin(), next.end(), inf);
        for (int b = 1; b <= t_; ++b) {
          if (!allowed(c[i], b)) continue;
          for (int a = 1; a <= t_; ++a)
            if (cur[static_cast<std::size_t>(a)] < inf)
              next[static_cast<std::size_t>(b)] =
                  std::min(next[static_cast<std::size_t>(b)], cur[static_cast<std::size_t>(a)] + (a == b));
        }
        std::swap(cur, next);
      }
      for (int last = 1; last <= t_; ++last)
        if (cur[static_cast<std::size_t>(last)] < inf)
          best = std::min(best, cur[static_cast<std::size_t>(last)] + (last == first));
    }
    return best;
  }

  std::int64_t bound(std::int64_t mono_rest) {
    std::int64_t b = mono_rest;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] != 0) continue;
      int m = std::numeric_limits<int>::max();
      for (int c = 1; c <= t_; ++c) m = std::min(m, count(v, c));
      b += m;
    }
    for (const auto& c : cycles_) b += cycle_min(c);
    return b;
  }

  void place(std::uint32_t v, int c, int delta) {
    for (auto u : rest_[v]) count(u, c) += delta;
  }

  void search(std::size_t depth, std::int64_t mono_rest, int max_used) {
    if (limit_.tick()) return;
    if (bound(mono_rest) >= best_value_) return;
    if (depth == n_) {
      best_value_ = bound(mono_rest);  // all colored: the bound is exact
      *best_ = color_;
      return;
    }
    const auto v = order_[depth];
    const int top = std::min(t_, max_used + 1);
    std::vector<int> colors(static_cast<std::size_t>(top));
    std::iota(colors.begin(), colors.end(), 1);
    std::stable_sort(colors.begin(), colors.end(), [&](int a, int b) { return count(v, a) < count(v, b); });
    for (int c : colors) {
      const std::int64_t added = count(v, c);
      color_[v] = c;
      place(v, c, +1);
      search(depth + 1, mono_rest + added, std::max(max_used, c));
      place(v, c, -1);
      color_[v] = 0;
      if (limit_.hit()) return;
    }
  }

  std::size_t n_;
  int t_;
  std::vector<Cycle> cycles_;
  SearchLimit& limit_;
  std::vector<std::vector<std::uint32_t>> rest_;
  std::vector<std::uint32_t> order_;
  std::vector<int> color_;
  std::vector<int> count_;
  std::int64_t best_value_ = 0;
  std::int64_t root_bound_ = 0;
  std::vector<int>* best_ = nullptr;
};

std::int64_t count_mono(const GraphView& g, const std::vector<int>& colors) {
  std::int64_t m = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto uv = g.edge(e);
    m += colors[uv[0]] == colors[uv[1]];
  }
  return m;
}

// Seeded simulated annealing; move = recolor one vertex.
std::int64_t anneal(const GraphView& g, int t, std::vector<int>& colors, std::uint64_t seed, SearchLimit& limit) {
  const std::size_t n = g.vertex_count();
  if (n == 0 || t <= 1) return count_mono(g, colors);
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto uv = g.edge(e);
    adj[uv[0]].push_back(uv[1]);
    adj[uv[1]].push_back(uv[0]);
  }
  Xoshiro256 rng(seed);
  std::int64_t current = count_mono(g, colors);
  std::int64_t best = current;
  std::vector<int> best_colors = colors;
  const std::uint64_t steps = 200'000;
  const double t_start = 2.0, t_end = 0.02;
  for (std::uint64_t step = 0; step < steps && current > 0; ++step) {
    if (limit.tick()) break;
    const double temperature = t_start * std::pow(t_end / t_start, static_cast<double>(step) / steps);
    const auto v = static_cast<std::uint32_t>(rng.below(n));
    int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(t - 1))) + 1;
    if (c >= colors[v]) ++c;
    std::int64_t delta = 0;
    for (auto u : adj[v]) delta += (colors[u] == c) - (colors[u] == colors[v]);
    if (delta <= 0 || rng.uniform() < std::exp(-static_cast<double>(delta) / temperature)) {
      colors[v] = c;
      current += delta;
      if (current < best) {
        best = current;
        best_colors = colors;
      }
    }
  }
  colors = std::move(best_colors);
  return best;
}

}  // namespace

SolveResult min_mono_edges(int n, int k, int t, const SolveBudget& budget) {
  const KneserParams params{n, k, 2};
  params.validate();
  if (t < 1) throw std::invalid_argument("color count must be positive");
  detail::Stopwatch watch;
  auto limit = detail::limit_for(budget);
  const auto g = full_view(params);
  const std::size_t vcount = g.vertex_count();

  SolveResult result;
  if (n >= 2 * k && t <= n - 2 * k + 1) {
    try {
      result.ratio_bound = schrijver_ratio_bound(n, k);
    } catch (const UndefinedError&) {
    }
  }

  // Incumbent: the merged canonical coloring when it fits in t colors, else
  // canonical colors folded into t.
  std::vector<int> best(vcount);
  if (n >= 2 * k) {
    const Coloring seed_coloring = (t <= n - 2 * k + 1) ? merged_canonical(n, k) : canonical_coloring(n, k);
    for (std::size_t v = 0; v < vcount; ++v) best[v] = std::min(seed_coloring.color(g.rank(v)), t);
  } else {
    std::fill(best.begin(), best.end(), 1);
  }
  std::int64_t best_value = count_mono(g, best);
  {
    std::vector<int> annealed = best;
    auto anneal_limit = SearchLimit(budget.node_limit, budget.seconds);
    const auto v = anneal(g, t, annealed, budget.seed, anneal_limit);
    if (v < best_value) {
      best_value = v;
      best = std::move(annealed);
    }
  }

  std::int64_t lower = result.ratio_bound ? static_cast<std::int64_t>(result.ratio_bound->ceil()) : 0;
  if (budget.mode == BudgetMode::exact && best_value > lower) {
    auto cycles = t == 2 ? pack_odd_cycles(g, budget.seed) : std::vector<Cycle>{};
    MonoBranchAndBound bnb(g, t, std::move(cycles), limit);
    std::int64_t found = best_value;
    const bool complete = bnb.run(best_value, best, found);
    best_value = found;
    lower = std::max(lower, complete ? best_value : std::min(best_value, bnb.root_bound()));
  }
  lower = std::min(lower, best_value);

  result.value = best_value;
  result.upper = best_value;
  result.lower = lower;
  result.optimality = lower == best_value ? Optimality::proven : Optimality::bound_only;
  result.coloring = detail::lift_coloring(g, best, t, "solver");
  if (static_cast<std::int64_t>(monochromatic_edges(*result.coloring, g)) != best_value)
    throw std::logic_error("min_mono_edges certificate disagrees with its value");
  detail::finish(result, limit, watch, budget);
  return result;
}

}  // namespace kneser
