#pragma once

// k-element subsets of a ground set [n] (n <= 64) encoded as 64-bit masks.
//
// Elements are 0-based internally: element i of {1..n} lives at bit i-1.
// The textual form used in all files and CLI output is 1-based, e.g. "{1,3,5}".
//
// Colex order on k-subsets coincides with numeric order on their masks, so
// enumeration is Gosper's next-bit-permutation and the colex rank of a set
// does not depend on n.

#include <bit>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kneser {

using Mask = std::uint64_t;

inline constexpr int kMaxGround = 64;

/// Binomial coefficient C(n, m) for 0 <= n <= 64; 0 when m < 0 or m > n.
std::uint64_t binomial(int n, int m);

/// Mask with bits 0..n-1 set.
constexpr Mask prefix_mask(int n) {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

class KSubset {
public:
  constexpr KSubset() = default;

  static constexpr KSubset from_mask(Mask mask) { return KSubset(mask); }
  /// Builds from 0-based elements; duplicates are an argument error.
  static KSubset from_elements(std::span<const int> elements);

  constexpr Mask mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool contains(int x) const { return (mask_ >> x) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  /// Smallest / largest 0-based element; -1 for the empty set.
  constexpr int min_element() const { return mask_ ? std::countr_zero(mask_) : -1; }
  constexpr int max_element() const { return mask_ ? 63 - std::countl_zero(mask_) : -1; }
  /// Whether every element lies below n.
  constexpr bool fits(int n) const { return (mask_ & ~prefix_mask(n)) == 0; }

  std::vector<int> elements() const;

  // Numeric mask order is colex order for sets of equal size.
  friend constexpr auto operator<=>(KSubset, KSubset) = default;

private:
  constexpr explicit KSubset(Mask mask) : mask_(mask) {}
  Mask mask_ = 0;
};

/// Ground set [n], 1 <= n <= 64.
class GroundSet {
public:
  explicit GroundSet(int n);
  int size() const { return n_; }
  Mask mask() const { return prefix_mask(n_); }

private:
  int n_;
};

/// Colex rank: sum over the i-th smallest element a_i (0-based, i from 1) of C(a_i, i).
std::uint64_t rank_colex(KSubset s);

/// Inverse of rank_colex; out_of_range when rank >= C(64, k).
KSubset unrank_colex(std::uint64_t rank, int k);
/// As above with the ground set fixed; out_of_range when rank >= C(n, k).
KSubset unrank_colex(std::uint64_t rank, int k, int n);

constexpr bool is_disjoint(KSubset s, KSubset t) { return (s.mask() & t.mask()) == 0; }

/// True iff s contains no pair {i, i+1 mod n}.
bool is_stable(KSubset s, int n);

/// Forward range over the k-subsets of [n] in colex order. Position equals rank.
/// k > n yields an empty range.
class SubsetRange {
public:
  class iterator {
  public:
    using value_type = KSubset;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;

    iterator() = default;
    iterator(Mask current, std::uint64_t remaining) : current_(current), remaining_(remaining) {}

    KSubset operator*() const { return KSubset::from_mask(current_); }
    iterator& operator++();
    iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const iterator& other) const { return remaining_ == other.remaining_; }

  private:
    Mask current_ = 0;
    std::uint64_t remaining_ = 0;
  };

  SubsetRange(int n, int k);

  iterator begin() const { return {first_, count_}; }
  iterator end() const { return {0, 0}; }
  std::uint64_t size() const { return count_; }

private:
  Mask first_ = 0;
  std::uint64_t count_ = 0;
};

inline SubsetRange enumerate_k_subsets(int n, int k) { return SubsetRange(n, k); }

/// Materialized colex list; index equals rank.
std::vector<KSubset> all_k_subsets(int n, int k);

/// "{1,3,5}" (1-based, increasing).
std::string to_string(KSubset s);

/// Parses the textual form; nullopt on malformed input or elements outside 1..64.
std::optional<KSubset> parse_ksubset(std::string_view text);

}  // namespace kneser
