#pragma once

// Vertex colorings of KG^r_{n,k}, the explicit constructions, and their
// verification against full or sampled graph views.
//
// Colors are 1..t; 0 marks an uncolored vertex (partial colorings are
// first-class). An edge is monochromatic when all r of its vertices carry the
// same color.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kneser/families.hpp"
#include "kneser/kneser.hpp"
#include "kneser/ordered_family.hpp"

namespace kneser {

class Coloring {
public:
  /// `color_of_rank` has one entry per colex rank, each in 0..colors.
  Coloring(KneserParams params, int colors, std::vector<int> color_of_rank, std::string provenance);

  const KneserParams& params() const { return params_; }
  int color_count() const { return colors_; }
  const std::string& provenance() const { return provenance_; }
  const std::vector<int>& assignment() const { return color_of_rank_; }

  int color(std::uint64_t rank) const { return color_of_rank_[rank]; }
  int color(KSubset s) const { return color_of_rank_[rank_colex(s)]; }

  bool is_total() const { return uncolored_count() == 0; }
  std::uint64_t uncolored_count() const;
  std::vector<std::uint64_t> uncolored() const;
  /// Members of color c (1..t).
  Family color_class(int c) const;

  /// `kneser-coloring v1 n k r t provenance`, then `rank color` lines; uncolored ranks omitted.
  void write(std::ostream& out) const;
  static Coloring read(std::istream& in);

  friend bool operator==(const Coloring&, const Coloring&) = default;

private:
  KneserParams params_;
  int colors_;
  std::vector<int> color_of_rank_;
  std::string provenance_;
};

struct ProperReport {
  bool proper = true;
  std::uint64_t violation_count = 0;
  std::vector<EdgeId> violations;  // first kMaxViolations
  static constexpr std::size_t kMaxViolations = 100;
};

/// invalid_argument if some vertex of g is uncolored.
ProperReport verify_proper(const Coloring& c, const GraphView& g);
/// Uncolored vertices never make an edge monochromatic.
std::uint64_t monochromatic_edges(const Coloring& c, const GraphView& g);

/// Every vertex in color 1.
Coloring constant_coloring(const KneserParams& params);

/// n-2k+2 colors: color i holds the sets with minimum i for i <= n-2k+1, the
/// last color the subsets of [n-2k+2, n]. invalid_argument if n < 2k.
Coloring canonical_coloring(int n, int k);

/// n-2k+1 colors: as canonical, but all subsets of the last 2k elements share
/// the final color; exactly C(2k,k)/2 monochromatic edges.
Coloring merged_canonical(int n, int k);

/// Star-free proper coloring of KG_{2(k-1)^2, k} in 2(k-2)(k-1) colors, k >= 3.
///
/// [n] splits into k-1 blocks of 2k-2 elements. Inside a block (local labels
/// 1..2k-2, m = 2k-5) the families are, in index order,
///   H_i = {F : i in F, F meets F_i} + {F_i},  i = 1..m,
///   G   = {F : |F cap {2k-4, 2k-3, 2k-2}| >= 2},
/// with F_i = {2k-4, 2k-3, 2k-2} + {i+1, ..., i+k-3}, the second part reduced
/// to 1..m by x -> ((x-1) mod m) + 1. Family j of block b gets color
/// (b-1)(2k-4) + j. F_i itself always takes the color of H_i; any other set
/// in several families takes the lowest color.
Coloring starfree_coloring(int k);

/// Partial coloring with n-2k colors, n >= 3k: colors 1..n-3k are stars on
/// elements 1..n-3k (a set takes its minimum), then color n-3k+j holds the sets
/// meeting the j-th triple of the last 3k elements in at least two elements
/// (lowest j wins). Exactly 3^k sets stay uncolored.
Coloring triple_block_coloring(int n, int k);

struct EmptyFamilyColoring {
  Coloring coloring;
  std::vector<int> position;  // relabeling used, see OrderedFamily::relabeling
};

/// Coloring in ceil((n-l)/(r-1)) colors from an ordered family of l disjoint
/// r-blocks. After relabeling so that A_i = [r(i-1)+1, ri], a set whose
/// largest (relabeled) element M lies in A_i gets color i, otherwise
/// l + ceil((M - rl)/(r-1)). Proper on every subgraph in which the family is
/// empty. invalid_argument if the family's n or r disagree with params.
EmptyFamilyColoring empty_family_coloring(const OrderedFamily& blocks, const KneserParams& params);

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  std::uint64_t ceil() const { return (num + den - 1) / den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// |E(KG_{n,k})| / |E(SG_{n,k})| in lowest terms; UndefinedError when SG has no edges.
Rational schrijver_ratio_bound(int n, int k);

/// One row of the construction verification CSV.
struct VerificationRow {
  std::string construction;
  int n = 0, k = 0, r = 2;
  std::string t;       // color count, or "-" when skipped
  std::string proper;  // "true" / "false" / "skipped"
  std::string mono_edges;
  std::string uncolored;
  bool passed = true;
};

inline constexpr const char* kVerificationHeader = "construction,n,k,r,t,proper,mono_edges,uncolored";
std::string to_csv(const VerificationRow& row);

}  // namespace kneser
