#pragma once

// Empty ordered families and the colorings they allow.
//
// For blocks A = (A_1, ..., A_l), V_i(A) holds the k-subsets of
// A_1 | ... | A_i that meet A_i, and E_i(A) the r-tuples of pairwise disjoint
// members of V_i(A). A is empty in G when no edge of any E_i(A) is present.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "kneser/colorings.hpp"
#include "kneser/families.hpp"
#include "kneser/kneser.hpp"
#include "kneser/ordered_family.hpp"

namespace kneser {

/// V_i(A); invalid_argument unless 1 <= i <= l.
Family vertex_class(const OrderedFamily& A, int i, int k);

/// E_i(A) as sorted rank tuples. Every tuple is checked to cover A_i.
std::vector<EdgeId> edge_class(const OrderedFamily& A, int i, const KneserParams& params);

/// Scans the present edges of g; true iff none lies in some E_i(A).
bool is_empty_in(const OrderedFamily& A, const SampledGraph& g);

struct EmptinessWitness {
  OrderedFamily family;
  KneserParams params;
  Probability p;
  std::uint64_t sample_seed = 0;
  std::vector<std::uint64_t> class_sizes;  // |E_i(A)|
  std::uint64_t total = 0;                 // |E(A)|
  std::vector<int> relabeling;             // see OrderedFamily::relabeling

  /// Re-checks emptiness from scratch; nullopt if A is not empty in g.
  static std::optional<EmptinessWitness> make(const OrderedFamily& A, const SampledGraph& g);

  /// `kneser-witness v1 n k r p_num p_den sample_seed l`, one block per line, `E_total <count>`.
  void write(std::ostream& out) const;
  /// Parses a witness file. Emptiness cannot be checked without the sample.
  static EmptinessWitness read(std::istream& in);
};

struct EmptySearchBudget {
  std::uint64_t max_restarts = 1000;
  std::uint64_t nodes_per_restart = 2000;
  std::uint64_t node_limit = 10'000'000;
  double seconds = 60.0;
};

struct EmptySearchStats {
  std::uint64_t restarts = 0;
  std::uint64_t nodes = 0;
  double millis = 0.0;
};

struct EmptySearchOutcome {
  std::optional<EmptinessWitness> witness;
  EmptySearchStats stats;
};

/// Randomized restarts of depth-first block placement. Restart 0 tries the
/// lowest unused r-set first at each depth, so an edgeless sample yields the
/// consecutive blocks; later restarts try unused r-sets in random order.
/// Absence is not a proof that no empty family exists.
EmptySearchOutcome search_empty_family(const SampledGraph& g, int l, const EmptySearchBudget& budget = {},
                                       std::uint64_t seed = 0);

/// Exhaustive search over ordered families; SizeError when n > 12.
std::optional<OrderedFamily> exhaustive_empty_family(const SampledGraph& g, int l);

struct SequentialBuild {
  Coloring coloring;          // n - achieved_h colors, proper on g
  int achieved_h = 0;
  int families = 0;           // number of base families
  std::vector<int> order;     // 0-based elements: base first, then the assigned pool elements
  std::uint64_t attempts = 0;
};

/// Greedy sequential scheme for k = r = 2. The base pairs C([h'],2) are split
/// into stars-minus-prefixes of bounded size; family i is then paired with a
/// pool element x_i such that A_i plus all pairs {y, x_i} with y placed
/// earlier is independent in g. Pairs with larger maxima get one color per
/// maximum. Tries h' = h down to 2, returning the first success.
/// UnsupportedError unless k = r = 2; invalid_argument unless 2 <= h <= n.
std::optional<SequentialBuild> sequential_k2_build(const SampledGraph& g, int h, const EmptySearchBudget& budget = {},
                                                   std::uint64_t seed = 0);

}  // namespace kneser
