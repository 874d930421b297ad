#pragma once

// Brute-force reference computations for the tests. Nothing here calls the
// library's enumeration, indexing or search code.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using Mask = std::uint64_t;

// Pascal's triangle, independent of the library table.
inline std::uint64_t choose(int n, int m) {
  if (m < 0 || n < 0 || m > n) return 0;
  std::vector<std::vector<std::uint64_t>> t(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    t[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j)
      t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          t[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] + t[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)];
  }
  return t[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
}

// k-subsets of [n] as masks, by scanning all masks in increasing numeric order (n <= 24).
inline std::vector<Mask> subsets(int n, int k) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << n); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

struct Graph {
  std::vector<Mask> verts;
  std::vector<std::vector<int>> adj;  // adjacency matrix
};

inline Graph kneser(int n, int k, const std::function<bool(Mask)>& keep = {}) {
  Graph g;
  for (Mask m : subsets(n, k))
    if (!keep || keep(m)) g.verts.push_back(m);
  const auto v = g.verts.size();
  g.adj.assign(v, std::vector<int>(v, 0));
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j) g.adj[i][j] = (g.verts[i] & g.verts[j]) == 0 && i != j;
  return g;
}

inline bool stable(Mask m, int n) {
  for (int i = 0; i < n; ++i)
    if (((m >> i) & 1) && ((m >> ((i + 1) % n)) & 1)) return false;
  return true;
}

inline std::uint64_t edges(const Graph& g) {
  std::uint64_t e = 0;
  for (std::size_t i = 0; i < g.verts.size(); ++i)
    for (std::size_t j = i + 1; j < g.verts.size(); ++j) e += g.adj[i][j];
  return e;
}

// Plain backtracking: can g be properly colored with t colors?
inline bool colorable(const Graph& g, int t) {
  const auto v = g.verts.size();
  std::vector<int> col(v, 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == v) return true;
    for (int c = 1; c <= t; ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = !(g.adj[i][j] && col[j] == c);
      if (!ok) continue;
      col[i] = c;
      if (rec(i + 1)) return true;
    }
    col[i] = 0;
    return false;
  };
  return rec(0);
}

inline int chromatic(const Graph& g) {
  if (g.verts.empty()) return 0;
  int t = 1;
  while (!colorable(g, t)) ++t;
  return t;
}

// Largest independent set by exhaustive include/exclude recursion.
inline int independence(const Graph& g) {
  const auto v = g.verts.size();
  int best = 0;
  std::vector<int> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (static_cast<int>(chosen.size() + (v - i)) <= best) return;
    if (i == v) {
      best = std::max(best, static_cast<int>(chosen.size()));
      return;
    }
    bool ok = true;
    for (int j : chosen) ok = ok && !g.adj[i][static_cast<std::size_t>(j)];
    if (ok) {
      chosen.push_back(static_cast<int>(i));
      rec(i + 1);
      chosen.pop_back();
    }
    rec(i + 1);
  };
  rec(0);
  return best;
}

// Fewest monochromatic edges over all t-colorings (t^|V| enumeration, tiny graphs only).
inline std::uint64_t min_mono(const Graph& g, int t) {
  const auto v = g.verts.size();
  std::vector<int> col(v, 0);
  std::uint64_t best = ~std::uint64_t{0};
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t mono) {
    if (mono >= best) return;
    if (i == v) {
      best = mono;
      return;
    }
    // Symmetry: vertex 0 gets color 0.
    const int top = i == 0 ? 1 : t;
    for (int c = 0; c < top; ++c) {
      std::uint64_t add = 0;
      for (std::size_t j = 0; j < i; ++j) add += g.adj[i][j] && col[j] == c;
      col[i] = c;
      rec(i + 1, mono + add);
    }
  };
  rec(0, 0);
  return best;
}

// Largest vertex subset whose induced subgraph is t-colorable (0 = drop).
inline int max_colorable(const Graph& g, int t) {
  const auto v = g.verts.size();
  std::vector<int> col(v, 0);
  int best = 0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int kept) {
    if (kept + static_cast<int>(v - i) <= best) return;
    if (i == v) {
      best = kept;
      return;
    }
    for (int c = 1; c <= t; ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = !(g.adj[i][j] && col[j] == c);
      if (!ok) continue;
      col[i] = c;
      rec(i + 1, kept + 1);
    }
    col[i] = 0;
    rec(i + 1, kept);
  };
  rec(0, 0);
  return best;
}

// Largest union of t intersecting families: the same as max_colorable (each
// color class of a proper partial coloring is intersecting and vice versa).
inline int max_union_intersecting(int n, int k, int t) {
  // Independent route: enumerate all intersecting families as bitmasks over vertices.
  const auto verts = subsets(n, k);
  const auto v = verts.size();
  std::vector<std::uint32_t> fams;
  for (std::uint32_t f = 0; f < (std::uint32_t{1} << v); ++f) {
    bool ok = true;
    for (std::size_t i = 0; i < v && ok; ++i)
      if ((f >> i) & 1)
        for (std::size_t j = i + 1; j < v && ok; ++j)
          if (((f >> j) & 1) && (verts[i] & verts[j]) == 0) ok = false;
    if (ok) fams.push_back(f);
  }
  int best = 0;
  std::function<void(std::size_t, int, std::uint32_t)> rec = [&](std::size_t start, int left, std::uint32_t acc) {
    best = std::max(best, std::popcount(acc));
    if (left == 0) return;
    for (std::size_t i = start; i < fams.size(); ++i) rec(i + 1, left - 1, acc | fams[i]);
  };
  rec(0, t, 0);
  return best;
}

// Number of r-sets of pairwise disjoint k-subsets of [n].
inline std::uint64_t hyperedges(int n, int k, int r) {
  const auto verts = subsets(n, k);
  std::uint64_t count = 0;
  std::function<void(std::size_t, int, Mask)> rec = [&](std::size_t start, int depth, Mask used) {
    if (depth == r) {
      ++count;
      return;
    }
    for (std::size_t i = start; i < verts.size(); ++i)
      if ((verts[i] & used) == 0) rec(i + 1, depth + 1, used | verts[i]);
  };
  rec(0, 0, 0);
  return count;
}

}  // namespace oracle
