#include "kneser/families.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "kneser/clique.hpp"
#include "kneser/errors.hpp"
#include "kneser/random.hpp"

namespace kneser {

Family::Family(int n, int k) : n_(n), k_(k) {
  if (n < 1 || n > kMaxGround) throw std::invalid_argument("family ground set must be in 1..64");
  if (k < 0 || k > n) throw std::invalid_argument("family set size must be in 0..n");
}

Family Family::of(int n, int k, std::span<const KSubset> members) {
  Family f(n, k);
  for (KSubset s : members) f.insert(s);
  return f;
}

bool Family::insert(KSubset s) {
  if (s.size() != k_) throw std::invalid_argument("member " + to_string(s) + " does not have size k");
  if (!s.fits(n_)) throw std::invalid_argument("member " + to_string(s) + " is not inside the ground set");
  auto it = std::lower_bound(members_.begin(), members_.end(), s);
  if (it != members_.end() && *it == s) return false;
  members_.insert(it, s);
  for (Mask m = s.mask(); m; m &= m - 1) ++degree_[static_cast<std::size_t>(std::countr_zero(m))];
  return true;
}

bool Family::contains(KSubset s) const { return std::binary_search(members_.begin(), members_.end(), s); }

int Family::max_degree() const { return *std::max_element(degree_.begin(), degree_.end()); }

bool is_intersecting(const Family& f) {
  const auto& m = f.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (is_disjoint(m[i], m[j])) return false;
  return true;
}

std::optional<int> star_center(const Family& f) {
  const auto size = static_cast<int>(f.size());
  for (int x = 0; x < f.ground_size(); ++x)
    if (f.degree(x) == size) return x;
  return std::nullopt;
}

int diversity(const Family& f) { return static_cast<int>(f.size()) - f.max_degree(); }

std::uint64_t disjoint_pairs(const Family& f) {
  const auto& m = f.members();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) count += is_disjoint(m[i], m[j]);
  return count;
}

const char* to_string(SearchMode mode) { return mode == SearchMode::exact ? "exact" : "heuristic"; }

namespace {

// Members adjacent iff they intersect.
std::vector<DynBitset> intersection_graph(const Family& f) {
  const auto& m = f.members();
  std::vector<DynBitset> adj(m.size(), DynBitset(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (!is_disjoint(m[i], m[j])) {
        adj[i].set(j);
        adj[j].set(i);
      }
  return adj;
}

IntersectingReport make_report(const Family& f, const std::vector<std::uint32_t>& chosen, SearchMode mode) {
  IntersectingReport report;
  report.size = chosen.size();
  report.ell = f.size() - chosen.size();
  report.mode = mode;
  for (auto i : chosen) report.witness.push_back(f.members()[i]);
  return report;
}

}  // namespace

IntersectingReport largest_intersecting_subfamily(const Family& f) {
  if (f.size() > kExactIntersectingLimit)
    throw SizeError("exact intersecting search limited to " + std::to_string(kExactIntersectingLimit) + " members");
  auto limit = SearchLimit::unlimited();
  auto result = max_clique(intersection_graph(f), limit);
  return make_report(f, result.clique, SearchMode::exact);
}

IntersectingReport largest_intersecting_subfamily_heuristic(const Family& f, std::uint64_t seed) {
  const auto adj = intersection_graph(f);
  const std::size_t n = adj.size();
  std::vector<std::uint32_t> best;
  // Best star.
  int center = 0;
  for (int x = 0; x < f.ground_size(); ++x)
    if (f.degree(x) > f.degree(center)) center = x;
  for (std::size_t i = 0; i < n; ++i)
    if (f.members()[i].contains(center)) best.push_back(static_cast<std::uint32_t>(i));

  Xoshiro256 rng(seed);
  std::vector<std::uint32_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
  const int rounds = 32;
  for (int round = 0; round < rounds && n > 0; ++round) {
    shuffle(order, rng);
    DynBitset in(n);
    std::vector<int> conflicts(n, 0);  // members of the current set not adjacent to i
    std::vector<std::uint32_t> current;
    auto add = [&](std::uint32_t v) {
      in.set(v);
      current.push_back(v);
      for (std::size_t u = 0; u < n; ++u)
        if (u != v && !adj[v].test(u)) ++conflicts[u];
    };
    auto remove = [&](std::uint32_t v) {
      in.reset(v);
      current.erase(std::find(current.begin(), current.end(), v));
      for (std::size_t u = 0; u < n; ++u)
        if (u != v && !adj[v].test(u)) --conflicts[u];
    };
    for (auto v : order)
      if (conflicts[v] == 0) add(v);
    // plateau walk: swap in a member that conflicts with exactly one chosen set
    for (int step = 0; step < 200; ++step) {
      bool improved = false;
      for (auto v : order)
        if (!in.test(v) && conflicts[v] == 0) {
          add(v);
          improved = true;
        }
      if (current.size() > best.size()) best = current;
      if (improved) continue;
      std::vector<std::uint32_t> swappable;
      for (auto v : order)
        if (!in.test(v) && conflicts[v] == 1) swappable.push_back(v);
      if (swappable.empty()) break;
      const auto v = swappable[rng.below(swappable.size())];
      for (auto u : current)
        if (!adj[v].test(u)) {
          remove(u);
          break;
        }
      add(v);
    }
    if (current.size() > best.size()) best = current;
  }
  std::sort(best.begin(), best.end());
  return make_report(f, best, SearchMode::heuristic);
}

IntersectingReport intersecting_report(const Family& f) {
  return f.size() <= kExactIntersectingLimit ? largest_intersecting_subfamily(f)
                                             : largest_intersecting_subfamily_heuristic(f);
}

std::size_t ell(const Family& f) { return largest_intersecting_subfamily(f).ell; }

Mask high_degree_set(const Family& f) {
  Mask out = 0;
  const auto size = static_cast<std::uint64_t>(f.size());
  for (int x = 0; x < f.ground_size(); ++x)
    if (2 * static_cast<std::uint64_t>(f.k()) * static_cast<std::uint64_t>(f.degree(x)) > size) out |= Mask{1} << x;
  // sum of degrees is k|f|, so fewer than 2k^2 elements can exceed |f|/(2k)
  if (std::popcount(out) > 2 * f.k() * f.k()) throw std::logic_error("high-degree set exceeds 2k^2");
  return out;
}

Prop31Report check_prop31(const Family& f, int b) {
  if (b < 1 || b > kMaxGround) throw std::invalid_argument("b must be in 1..64");
  for (KSubset s : f.members())
    if (!s.fits(b)) throw std::invalid_argument("member " + to_string(s) + " is not inside [b]");
  const int k = f.k();
  Prop31Report report;
  report.threshold = 2 * static_cast<std::uint64_t>(k) * (k >= 2 && b >= 2 ? binomial(b - 2, k - 2) : 0);
  report.applicable = f.size() >= report.threshold;
  report.gamma = diversity(f);
  report.lhs = disjoint_pairs(f);
  const double size = static_cast<double>(f.size());
  const std::uint64_t central = binomial(2 * k, k);
  report.rhs = std::min(report.gamma * size / 6.0, size * size / (144.0 * static_cast<double>(central)));
  // min(a, b) <= e  iff  a <= e or b <= e, compared in integers.
  using u128 = unsigned __int128;
  const u128 e = report.lhs;
  const bool a_ok = static_cast<u128>(report.gamma) * f.size() <= 6 * e;
  const bool b_ok = static_cast<u128>(f.size()) * f.size() <= 144 * static_cast<u128>(central) * e;
  report.holds = a_ok || b_ok;
  return report;
}

Family read_family(std::istream& in, int n, std::optional<int> k) {
  std::vector<KSubset> members;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto s = parse_ksubset(line);
    if (!s) throw std::invalid_argument("line " + std::to_string(line_no) + ": malformed set '" + line + "'");
    members.push_back(*s);
  }
  const int size = k ? *k : (members.empty() ? 1 : members.front().size());
  return Family::of(n, size, members);
}

void write_family(std::ostream& out, const Family& f) {
  for (KSubset s : f.members()) out << to_string(s) << '\n';
}

}  // namespace kneser
