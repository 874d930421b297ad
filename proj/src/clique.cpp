#include "kneser/clique.hpp"

#include <algorithm>

namespace kneser {
namespace {

class CliqueSearch {
public:
  CliqueSearch(const std::vector<DynBitset>& adjacency, SearchLimit& limit)
      : adj_(adjacency), limit_(limit), n_(adjacency.size()) {}

  CliqueResult run() {
    DynBitset all(n_);
    for (std::size_t v = 0; v < n_; ++v) all.set(v);
    // Greedy start so the bound prunes from the first node.
    greedy_seed();
    std::vector<std::uint32_t> current;
    expand(current, all);
    CliqueResult result;
    result.clique = best_;
    std::sort(result.clique.begin(), result.clique.end());
    result.complete = !limit_.hit();
    return result;
  }

private:
  // Greedy cliques from the few highest-degree starts.
  void greedy_seed() {
    std::vector<std::uint32_t> order(n_);
    for (std::size_t v = 0; v < n_; ++v) order[v] = static_cast<std::uint32_t>(v);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return adj_[a].count() > adj_[b].count(); });
    const std::size_t starts = std::min<std::size_t>(n_, 8);
    for (std::size_t s = 0; s < starts; ++s) {
      std::vector<std::uint32_t> clique{order[s]};
      DynBitset cand = adj_[order[s]];
      while (cand.any()) {
        std::size_t pick = cand.find_first();
        std::size_t best_deg = 0;
        for (std::size_t v = pick; v < n_; v = cand.find_next(v + 1)) {
          const std::size_t d = cand.and_count(adj_[v]);
          if (d > best_deg) {
            best_deg = d;
            pick = v;
          }
        }
        clique.push_back(static_cast<std::uint32_t>(pick));
        cand &= adj_[pick];
      }
      if (clique.size() > best_.size()) best_ = clique;
    }
  }

  // Greedy sequential coloring of P; fills vertices in color order with their color bound.
  void color_sort(const DynBitset& P, std::vector<std::uint32_t>& order, std::vector<std::uint32_t>& bounds) const {
    DynBitset uncolored = P;
    std::uint32_t color = 0;
    while (uncolored.any()) {
      ++color;
      DynBitset available = uncolored;
      while (available.any()) {
        const std::size_t v = available.find_first();
        available.reset(v);
        available.subtract(adj_[v]);
        uncolored.reset(v);
        order.push_back(static_cast<std::uint32_t>(v));
        bounds.push_back(color);
      }
    }
  }

  void expand(std::vector<std::uint32_t>& current, DynBitset P) {
    if (limit_.tick()) return;
    std::vector<std::uint32_t> order, bounds;
    color_sort(P, order, bounds);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + bounds[i] <= best_.size()) return;
      const std::uint32_t v = order[i];
      current.push_back(v);
      DynBitset next = P;
      next &= adj_[v];
      if (!next.any()) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, std::move(next));
      }
      current.pop_back();
      P.reset(v);
      if (limit_.hit()) return;
    }
  }

  const std::vector<DynBitset>& adj_;
  SearchLimit& limit_;
  std::size_t n_;
  std::vector<std::uint32_t> best_;
};

}  // namespace

CliqueResult max_clique(const std::vector<DynBitset>& adjacency, SearchLimit& limit) {
  if (adjacency.empty()) return {};
  return CliqueSearch(adjacency, limit).run();
}

std::vector<DynBitset> complement(const std::vector<DynBitset>& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<DynBitset> out(n, DynBitset(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && !adjacency[u].test(v)) out[u].set(v);
  return out;
}

}  // namespace kneser
