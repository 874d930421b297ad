#pragma once

// Kneser (hyper)graphs KG^r_{n,k}, their Bernoulli(p) edge samples, and
// induced views.
//
// An edge is an r-tuple of pairwise disjoint k-subsets, written as the sorted
// tuple of the vertices' colex ranks. Edges are indexed canonically by their
// position in the lexicographic order of those tuples. A sample decides each
// edge's presence by hashing (seed, canonical index), so presence does not
// depend on iteration order.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kneser/bitset.hpp"
#include "kneser/subsets.hpp"

namespace kneser {

struct KneserParams {
  int n = 0;
  int k = 1;
  int r = 2;

  /// invalid_argument unless 1 <= n <= 64, 1 <= k <= n, r >= 2.
  void validate() const;
  std::uint64_t vertex_count() const { return binomial(n, k); }
  /// False when n < r*k; such parameters are allowed but have no edges.
  bool has_edges() const { return n >= r * k; }

  friend bool operator==(const KneserParams&, const KneserParams&) = default;
};

/// Number of r-tuples of pairwise disjoint k-subsets; SizeError on 64-bit overflow.
std::uint64_t edge_count(const KneserParams& params);

/// Retention probability num/den. Coins compare against num/den scaled to
/// 32 bits (rounded down), so p = 1 keeps every edge and p = 0 none.
struct Probability {
  std::uint64_t num = 1;
  std::uint64_t den = 1;

  void validate() const;
  /// floor(num * 2^32 / den), in [0, 2^32].
  std::uint64_t threshold() const;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  /// Parses "NUM/DEN" or a bare integer 0 / 1.
  static Probability parse(std::string_view text);

  friend bool operator==(const Probability&, const Probability&) = default;
};

/// Sorted colex ranks of the r vertices of an edge.
using EdgeId = std::vector<std::uint64_t>;

std::string to_string(const EdgeId& edge);

/// Lexicographically ordered list of all edges of KG^r_{n,k}.
class EdgeIndex {
public:
  static constexpr std::uint64_t kMaxEdges = std::uint64_t{1} << 24;

  /// SizeError when the edge count exceeds kMaxEdges.
  explicit EdgeIndex(const KneserParams& params);

  const KneserParams& params() const { return params_; }
  std::uint64_t size() const { return count_; }
  /// Vertex ranks of edge i.
  std::span<const std::uint32_t> edge(std::uint64_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(params_.r), static_cast<std::size_t>(params_.r)};
  }
  /// Canonical index of the tuple, or nullopt if it is not a sorted edge.
  std::optional<std::uint64_t> index_of(std::span<const std::uint64_t> ranks) const;

private:
  KneserParams params_;
  std::uint64_t count_ = 0;
  std::vector<std::uint32_t> flat_;
};

/// Process-wide cache of edge indices, safe for concurrent use.
std::shared_ptr<const EdgeIndex> shared_edge_index(const KneserParams& params);

/// Immutable record of which edges survived Bernoulli(p) sampling.
class SampledGraph {
public:
  SampledGraph(KneserParams params, Probability p, std::uint64_t seed, std::shared_ptr<const EdgeIndex> index,
               DynBitset presence);

  const KneserParams& params() const { return params_; }
  const Probability& p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  const EdgeIndex& edges() const { return *index_; }
  const DynBitset& presence() const { return presence_; }

  std::uint64_t edge_total() const { return index_->size(); }
  std::uint64_t present_count() const { return present_count_; }

  bool contains_index(std::uint64_t i) const { return presence_.test(i); }
  /// invalid_argument unless e is a sorted tuple of r pairwise disjoint valid vertices.
  bool contains_edge(const EdgeId& e) const;
  /// As contains_edge but for vertices given as subsets (any order).
  bool contains_edge(std::span<const KSubset> sets) const;

  /// `kneser-sample v1 n k r p_num p_den seed` then the presence bits as hex.
  void write(std::ostream& out) const;
  /// invalid_argument on malformed input.
  static SampledGraph read(std::istream& in);

  friend bool operator==(const SampledGraph& a, const SampledGraph& b);

private:
  KneserParams params_;
  Probability p_;
  std::uint64_t seed_;
  std::shared_ptr<const EdgeIndex> index_;
  DynBitset presence_;
  std::uint64_t present_count_ = 0;
};

SampledGraph sample_subgraph(const KneserParams& params, Probability p, std::uint64_t seed);
/// The full KG^r_{n,k} as a p = 1 sample.
SampledGraph full_graph(const KneserParams& params);

/// Induced sub(hyper)graph on the k-subsets of a ground subset.
///
/// Local vertex i is the i-th contained vertex in colex order. Edges are
/// stored as local index tuples. For r == 2 adjacency rows are materialized.
class GraphView {
public:
  GraphView(KneserParams params, Mask ground, std::vector<KSubset> vertices, std::vector<std::uint32_t> flat_edges);

  const KneserParams& params() const { return params_; }
  int arity() const { return params_.r; }
  Mask ground() const { return ground_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  KSubset vertex(std::size_t i) const { return vertices_[i]; }
  std::uint64_t rank(std::size_t i) const { return rank_colex(vertices_[i]); }
  const std::vector<KSubset>& vertices() const { return vertices_; }
  std::optional<std::uint32_t> local_index(KSubset s) const;

  std::size_t edge_count() const { return edge_count_; }
  std::span<const std::uint32_t> edge(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(params_.r), static_cast<std::size_t>(params_.r)};
  }
  /// Global edge id (sorted colex ranks) of local edge i.
  EdgeId edge_id(std::size_t i) const;
  const std::vector<std::uint32_t>& incident_edges(std::size_t v) const { return incidence_[v]; }
  std::size_t degree(std::size_t v) const { return incidence_[v].size(); }

  /// Adjacency rows; only for r == 2.
  const DynBitset& neighbors(std::size_t v) const { return adjacency_[v]; }
  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_[u].test(v); }

private:
  KneserParams params_;
  Mask ground_;
  std::vector<KSubset> vertices_;
  std::vector<std::uint32_t> flat_;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<std::uint32_t>> incidence_;
  std::vector<DynBitset> adjacency_;
};

GraphView view(const SampledGraph& g);
/// Restriction to R (0-based element mask, clipped to [n]); no resampling.
GraphView restrict(const SampledGraph& g, Mask R);
GraphView restrict(const GraphView& g, Mask R);
/// Full KG_{n,k} induced on stable k-sets; UnsupportedError unless r == 2.
GraphView schrijver_view(const KneserParams& params);
GraphView full_view(const KneserParams& params);

}  // namespace kneser
