#pragma once

// Explicit families of k-subsets of [n] and the statistics used when
// analysing color classes: degrees d_x, maximum degree, diversity
// gamma = |F| - max degree, disjoint-pair count e(F), the largest
// intersecting subfamily (and ell = |F| minus its size), and the high-degree
// element set {x : d_x > |F|/(2k)}.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "kneser/subsets.hpp"

namespace kneser {

class Family {
public:
  /// invalid_argument unless 1 <= n <= 64 and 0 <= k <= n.
  Family(int n, int k);
  static Family of(int n, int k, std::span<const KSubset> members);

  /// Adds s; false if already present. invalid_argument if |s| != k or s is not inside [n].
  bool insert(KSubset s);
  bool contains(KSubset s) const;

  int ground_size() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  /// Members in colex order.
  const std::vector<KSubset>& members() const { return members_; }

  /// d_x for a 0-based element x.
  int degree(int x) const { return degree_[static_cast<std::size_t>(x)]; }
  int max_degree() const;

private:
  int n_;
  int k_;
  std::vector<KSubset> members_;
  std::array<int, kMaxGround> degree_{};
};

bool is_intersecting(const Family& f);

/// Smallest 0-based x with d_x = |f|, if any. The empty family yields 0 (vacuous star).
std::optional<int> star_center(const Family& f);

/// |f| - max degree.
int diversity(const Family& f);

/// Number of unordered disjoint pairs in f.
std::uint64_t disjoint_pairs(const Family& f);

enum class SearchMode { exact, heuristic };

const char* to_string(SearchMode mode);

struct IntersectingReport {
  std::size_t size = 0;  // size of the intersecting subfamily found
  std::size_t ell = 0;   // |f| - size
  SearchMode mode = SearchMode::exact;
  std::vector<KSubset> witness;
};

inline constexpr std::size_t kExactIntersectingLimit = 40;

/// Exact maximum intersecting subfamily; SizeError when |f| > 40.
IntersectingReport largest_intersecting_subfamily(const Family& f);
/// Lower bound via best star, greedy cliques, and swap-based local search.
IntersectingReport largest_intersecting_subfamily_heuristic(const Family& f, std::uint64_t seed = 0);
/// Exact up to the limit, heuristic beyond; the mode is recorded.
IntersectingReport intersecting_report(const Family& f);
/// ell(f), exact.
std::size_t ell(const Family& f);

/// Elements (0-based mask) with d_x > |f| / (2k).
Mask high_degree_set(const Family& f);

struct Prop31Report {
  bool applicable = false;
  bool holds = false;
  std::uint64_t lhs = 0;  // e(f)
  double rhs = 0.0;       // min(gamma |f| / 6, |f|^2 / (144 C(2k,k)))
  int gamma = 0;
  std::uint64_t threshold = 0;  // 2k C(b-2, k-2)
};

/// Disjoint-pair lower bound check for f inside C([b], k).
/// Applicable when |f| >= 2k C(b-2, k-2); then holds iff e(f) >= the minimum above.
/// invalid_argument if some member is not inside [b].
Prop31Report check_prop31(const Family& f, int b);

/// One `{...}` per line; blank lines and `#` comments skipped. k is taken from
/// the first member (or `k` when given); invalid_argument on malformed lines.
Family read_family(std::istream& in, int n, std::optional<int> k = std::nullopt);
void write_family(std::ostream& out, const Family& f);

}  // namespace kneser
