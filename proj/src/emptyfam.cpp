#include "kneser/emptyfam.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kneser/clique.hpp"
#include "kneser/errors.hpp"
#include "kneser/random.hpp"

namespace kneser {
namespace {

std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

// k-subsets of U that meet B, in colex order.
std::vector<KSubset> subsets_meeting(Mask U, Mask B, int k) {
  const auto elems = elements_of(U);
  std::vector<KSubset> out;
  if (k > static_cast<int>(elems.size())) return out;
  for (KSubset local : enumerate_k_subsets(static_cast<int>(elems.size()), k)) {
    Mask m = 0;
    for (Mask bits = local.mask(); bits; bits &= bits - 1) m |= Mask{1} << elems[static_cast<std::size_t>(std::countr_zero(bits))];
    if (m & B) out.push_back(KSubset::from_mask(m));
  }
  return out;
}

// Calls f on every r-tuple of pairwise disjoint members (indices increasing);
// stops early when f returns false. Returns false if stopped.
bool for_each_disjoint_tuple(const std::vector<KSubset>& verts, int r,
                             const std::function<bool(const std::vector<KSubset>&)>& f) {
  std::vector<KSubset> tuple;
  std::function<bool(std::size_t, Mask)> rec = [&](std::size_t start, Mask used) {
    if (static_cast<int>(tuple.size()) == r) return f(tuple);
    for (std::size_t i = start; i < verts.size(); ++i) {
      if (verts[i].mask() & used) continue;
      tuple.push_back(verts[i]);
      const bool go_on = rec(i + 1, used | verts[i].mask());
      tuple.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return rec(0, 0);
}

void check_index(const OrderedFamily& A, int i) {
  if (i < 1 || i > A.length()) throw std::invalid_argument("class index outside 1..l");
}

void check_family_fits(const OrderedFamily& A, const KneserParams& params) {
  if (A.ground_size() != params.n) throw std::invalid_argument("family ground set differs from n");
  if (A.arity() != params.r) throw std::invalid_argument("family block size differs from r");
}

// Whether the new class E_{j+1} created by adding block B after prefix union U
// has a present edge in g.
bool new_class_absent(const SampledGraph& g, Mask U, Mask B) {
  const auto& params = g.params();
  const auto verts = subsets_meeting(U | B, B, params.k);
  std::vector<std::uint64_t> ranks(static_cast<std::size_t>(params.r));
  return for_each_disjoint_tuple(verts, params.r, [&](const std::vector<KSubset>& tuple) {
    for (std::size_t j = 0; j < tuple.size(); ++j) ranks[j] = rank_colex(tuple[j]);
    const auto idx = g.edges().index_of(ranks);
    if (!idx) throw std::logic_error("class tuple is not an edge");
    return !g.contains_index(*idx);
  });
}

std::vector<Mask> r_subsets_avoiding(int n, int r, Mask used) {
  const auto free = elements_of(prefix_mask(n) & ~used);
  std::vector<Mask> out;
  if (r > static_cast<int>(free.size())) return out;
  for (KSubset local : enumerate_k_subsets(static_cast<int>(free.size()), r)) {
    Mask m = 0;
    for (Mask bits = local.mask(); bits; bits &= bits - 1) m |= Mask{1} << free[static_cast<std::size_t>(std::countr_zero(bits))];
    out.push_back(m);
  }
  return out;
}

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Family vertex_class(const OrderedFamily& A, int i, int k) {
  check_index(A, i);
  Family f(A.ground_size(), k);
  for (KSubset s : subsets_meeting(A.prefix_union(i), A.block(i).mask(), k)) f.insert(s);
  return f;
}

std::vector<EdgeId> edge_class(const OrderedFamily& A, int i, const KneserParams& params) {
  params.validate();
  check_family_fits(A, params);
  check_index(A, i);
  const Mask block = A.block(i).mask();
  const auto verts = subsets_meeting(A.prefix_union(i), block, params.k);
  std::vector<EdgeId> out;
  for_each_disjoint_tuple(verts, params.r, [&](const std::vector<KSubset>& tuple) {
    Mask cover = 0;
    EdgeId e;
    for (KSubset s : tuple) {
      cover |= s.mask();
      e.push_back(rank_colex(s));
    }
    if ((cover & block) != block) throw std::logic_error("edge class tuple does not cover its block");
    out.push_back(std::move(e));
    return true;
  });
  return out;
}

bool is_empty_in(const OrderedFamily& A, const SampledGraph& g) {
  const auto& params = g.params();
  check_family_fits(A, params);
  std::vector<int> block_of(static_cast<std::size_t>(params.n), 0);
  for (int i = 1; i <= A.length(); ++i)
    for (int x : A.block(i).elements()) block_of[static_cast<std::size_t>(x)] = i;

  // Per vertex: the largest block index it touches, or -1 if it leaves the blocks.
  std::vector<int> top(params.vertex_count(), 0);
  std::vector<Mask> mask(params.vertex_count(), 0);
  std::uint64_t rank = 0;
  for (KSubset s : enumerate_k_subsets(params.n, params.k)) {
    int t = 0;
    for (int x : s.elements()) {
      const int b = block_of[static_cast<std::size_t>(x)];
      if (b == 0) {
        t = -1;
        break;
      }
      t = std::max(t, b);
    }
    top[rank] = t;
    mask[rank] = s.mask();
    ++rank;
  }

  const auto& presence = g.presence();
  for (std::size_t e = presence.find_first(); e < presence.size(); e = presence.find_next(e + 1)) {
    const auto tuple = g.edges().edge(e);
    int i = 0;
    bool inside = true;
    for (auto v : tuple) {
      if (top[v] < 0) {
        inside = false;
        break;
      }
      i = std::max(i, top[v]);
    }
    if (!inside) continue;
    const Mask block = A.block(i).mask();
    bool all_meet = true;
    for (auto v : tuple) all_meet = all_meet && (mask[v] & block) != 0;
    if (all_meet) return false;
  }
  return true;
}

std::optional<EmptinessWitness> EmptinessWitness::make(const OrderedFamily& A, const SampledGraph& g) {
  if (!is_empty_in(A, g)) return std::nullopt;
  EmptinessWitness w{A, g.params(), g.p(), g.seed(), {}, 0, A.relabeling()};
  for (int i = 1; i <= A.length(); ++i) {
    const auto size = edge_class(A, i, g.params()).size();
    w.class_sizes.push_back(size);
    w.total += size;
  }
  return w;
}

void EmptinessWitness::write(std::ostream& out) const {
  out << "kneser-witness v1 " << params.n << ' ' << params.k << ' ' << params.r << ' ' << p.num << ' ' << p.den << ' '
      << sample_seed << ' ' << family.length() << '\n';
  for (KSubset b : family.blocks()) out << to_string(b) << '\n';
  out << "E_total " << total << '\n';
}

EmptinessWitness EmptinessWitness::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty witness file");
  std::istringstream hs(line);
  std::string magic, version;
  KneserParams params;
  Probability p;
  std::uint64_t seed = 0;
  int l = 0;
  if (!(hs >> magic >> version >> params.n >> params.k >> params.r >> p.num >> p.den >> seed >> l) ||
      magic != "kneser-witness" || version != "v1" || l < 0)
    throw std::invalid_argument("malformed witness header");
  params.validate();
  p.validate();
  std::vector<KSubset> blocks;
  for (int i = 0; i < l; ++i) {
    if (!std::getline(in, line)) throw std::invalid_argument("witness file ends before its blocks");
    auto s = parse_ksubset(line);
    if (!s) throw std::invalid_argument("malformed witness block '" + line + "'");
    blocks.push_back(*s);
  }
  std::uint64_t total = 0;
  std::string tag;
  if (!std::getline(in, line) || !(std::istringstream(line) >> tag >> total) || tag != "E_total")
    throw std::invalid_argument("witness file lacks its E_total line");
  EmptinessWitness w{OrderedFamily(params.n, params.r, std::move(blocks)), params, p, seed, {}, 0, {}};
  w.relabeling = w.family.relabeling();
  for (int i = 1; i <= l; ++i) {
    const auto size = edge_class(w.family, i, params).size();
    w.class_sizes.push_back(size);
    w.total += size;
  }
  if (w.total != total) throw std::invalid_argument("witness E_total disagrees with its blocks");
  return w;
}

EmptySearchOutcome search_empty_family(const SampledGraph& g, int l, const EmptySearchBudget& budget,
                                       std::uint64_t seed) {
  const auto& params = g.params();
  if (l < 1) throw std::invalid_argument("family length must be at least 1");
  if (params.r * l > params.n) throw std::invalid_argument("need r*l <= n");
  const auto start = std::chrono::steady_clock::now();
  SearchLimit limit(budget.node_limit, budget.seconds);
  Xoshiro256 rng(seed);
  EmptySearchOutcome outcome;

  std::vector<KSubset> blocks;
  std::uint64_t restart_nodes = 0;
  bool restart_exhausted = false;
  bool randomize = false;

  std::function<bool(Mask)> extend = [&](Mask used) -> bool {
    if (static_cast<int>(blocks.size()) == l) return true;
    auto candidates = r_subsets_avoiding(params.n, params.r, used);
    if (randomize) shuffle(candidates, rng);
    for (Mask cand : candidates) {
      if (limit.tick() || ++restart_nodes > budget.nodes_per_restart) {
        restart_exhausted = true;
        return false;
      }
      if (!new_class_absent(g, used, cand)) continue;
      blocks.push_back(KSubset::from_mask(cand));
      if (extend(used | cand)) return true;
      blocks.pop_back();
      if (restart_exhausted) return false;
    }
    return false;
  };

  for (std::uint64_t restart = 0; restart < budget.max_restarts && !limit.hit(); ++restart) {
    ++outcome.stats.restarts;
    blocks.clear();
    restart_nodes = 0;
    restart_exhausted = false;
    randomize = restart > 0;
    if (extend(0)) {
      const OrderedFamily family(params.n, params.r, blocks);
      outcome.witness = EmptinessWitness::make(family, g);
      if (!outcome.witness) throw std::logic_error("search produced a family that is not empty");
      break;
    }
    // The deterministic first pass covered the whole tree: nothing exists.
    if (!restart_exhausted && !limit.hit()) break;
  }
  outcome.stats.nodes = limit.nodes();
  outcome.stats.millis = millis_since(start);
  return outcome;
}

std::optional<OrderedFamily> exhaustive_empty_family(const SampledGraph& g, int l) {
  const auto& params = g.params();
  if (params.n > 12) throw SizeError("exhaustive empty-family search is limited to n <= 12");
  if (l < 1) throw std::invalid_argument("family length must be at least 1");
  std::vector<KSubset> blocks;
  std::function<bool(Mask)> rec = [&](Mask used) -> bool {
    if (static_cast<int>(blocks.size()) == l) return true;
    for (Mask cand : r_subsets_avoiding(params.n, params.r, used)) {
      blocks.push_back(KSubset::from_mask(cand));
      if (is_empty_in(OrderedFamily(params.n, params.r, blocks), g) && rec(used | cand)) return true;
      blocks.pop_back();
    }
    return false;
  };
  if (rec(0)) return OrderedFamily(params.n, params.r, blocks);
  return std::nullopt;
}

namespace {

using Pair = std::pair<int, int>;

// Splits the pairs of {0..h-1} into stars-minus-prefixes of at most cap pairs
// each, using the smallest cap that gives at most max_families families.
std::optional<std::vector<std::vector<Pair>>> base_partition(int h, int max_families) {
  for (int cap = 1; cap <= std::max(1, h - 1); ++cap) {
    std::vector<std::vector<Pair>> families;
    for (int a = 0; a + 1 < h; ++a) {
      if (a == h - 2 && h >= 3) break;  // the pair {h-2, h-1} is placed below
      std::vector<Pair> chunk;
      for (int b = a + 1; b < h; ++b) {
        chunk.emplace_back(a, b);
        if (static_cast<int>(chunk.size()) == cap) {
          families.push_back(std::move(chunk));
          chunk.clear();
        }
      }
      if (!chunk.empty()) families.push_back(std::move(chunk));
    }
    if (h >= 3) {
      // Joins the star of h-3 (which then forms a triangle) when it fits.
      auto& last = families.back();
      if (last.front().first == h - 3 && last.size() == 2 && cap >= 3)
        last.emplace_back(h - 2, h - 1);
      else
        families.push_back({{h - 2, h - 1}});
    } else {
      families = {{{0, 1}}};
    }
    if (static_cast<int>(families.size()) <= max_families) return families;
  }
  return std::nullopt;
}

bool pair_edge_present(const SampledGraph& g, KSubset a, KSubset b) {
  std::uint64_t ra = rank_colex(a), rb = rank_colex(b);
  if (ra > rb) std::swap(ra, rb);
  const std::uint64_t ranks[2] = {ra, rb};
  const auto idx = g.edges().index_of(ranks);
  if (!idx) throw std::logic_error("disjoint pair is not an edge");
  return g.contains_index(*idx);
}

KSubset pair_set(int u, int v) { return KSubset::from_mask((Mask{1} << u) | (Mask{1} << v)); }

}  // namespace

std::optional<SequentialBuild> sequential_k2_build(const SampledGraph& g, int h, const EmptySearchBudget& budget,
                                                   std::uint64_t seed) {
  const auto& params = g.params();
  if (params.k != 2 || params.r != 2) throw UnsupportedError("sequential build needs k = 2 and r = 2");
  const int n = params.n;
  if (h < 2 || h > n) throw std::invalid_argument("need 2 <= h <= n");
  SearchLimit limit(budget.node_limit, budget.seconds);
  Xoshiro256 rng(seed);
  std::uint64_t attempts = 0;

  for (int hp = h; hp >= 2 && !limit.hit(); --hp) {
    const auto plan = base_partition(hp, n - hp);
    if (!plan) continue;
    const int A = static_cast<int>(plan->size());

    for (std::uint64_t attempt = 0; attempt < std::max<std::uint64_t>(1, budget.max_restarts) && !limit.hit(); ++attempt) {
      ++attempts;
      std::vector<int> pool;
      for (int x = hp; x < n; ++x) pool.push_back(x);
      shuffle(pool, rng);
      std::vector<int> placed;
      for (int x = 0; x < hp; ++x) placed.push_back(x);

      bool ok = true;
      for (int i = 0; i < A && ok; ++i) {
        const auto& fam = (*plan)[static_cast<std::size_t>(i)];
        ok = false;
        for (std::size_t j = 0; j < pool.size(); ++j) {
          if (limit.tick()) break;
          const int x = pool[j];
          // A_i is intersecting and the pairs {y, x} share x, so only mixed pairs can be edges.
          bool independent = true;
          for (auto [a, b] : fam) {
            for (int y : placed) {
              if (y == a || y == b) continue;
              if (pair_edge_present(g, pair_set(a, b), pair_set(y, x))) {
                independent = false;
                break;
              }
            }
            if (!independent) break;
          }
          if (!independent) continue;
          placed.push_back(x);
          pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
          ok = true;
          break;
        }
      }
      if (!ok) continue;

      std::sort(pool.begin(), pool.end());
      for (int x : pool) placed.push_back(x);
      std::vector<int> pos(static_cast<std::size_t>(n), 0);
      for (std::size_t p = 0; p < placed.size(); ++p) pos[static_cast<std::size_t>(placed[p])] = static_cast<int>(p);
      std::vector<int> family_of(static_cast<std::size_t>(hp * hp), 0);
      for (int i = 0; i < A; ++i)
        for (auto [a, b] : (*plan)[static_cast<std::size_t>(i)]) family_of[static_cast<std::size_t>(a * hp + b)] = i + 1;

      std::vector<int> colors;
      colors.reserve(params.vertex_count());
      for (KSubset s : enumerate_k_subsets(n, 2)) {
        const auto e = s.elements();
        int u = pos[static_cast<std::size_t>(e[0])], v = pos[static_cast<std::size_t>(e[1])];
        if (u > v) std::swap(u, v);
        colors.push_back(v < hp ? family_of[static_cast<std::size_t>(u * hp + v)] : v - hp + 1);
      }
      SequentialBuild build{Coloring(params, n - hp, std::move(colors), "sequential-k2"), hp, A, placed, attempts};
      if (!verify_proper(build.coloring, view(g)).proper)
        throw std::logic_error("sequential build produced an improper coloring");
      return build;
    }
  }
  return std::nullopt;
}

}  // namespace kneser
