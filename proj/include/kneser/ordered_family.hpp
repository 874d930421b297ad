#pragma once

#include <string>
#include <vector>

#include "kneser/subsets.hpp"

namespace kneser {

/// Ordered blocks (A_1, ..., A_l) of pairwise disjoint r-subsets of [n].
class OrderedFamily {
public:
  /// invalid_argument if a block has the wrong size, leaves [n], or overlaps another.
  OrderedFamily(int n, int r, std::vector<KSubset> blocks);

  /// {1..r}, {r+1..2r}, ... (l blocks).
  static OrderedFamily consecutive(int n, int r, int l);

  int ground_size() const { return n_; }
  int arity() const { return r_; }
  int length() const { return static_cast<int>(blocks_.size()); }
  const std::vector<KSubset>& blocks() const { return blocks_; }
  /// A_i, 1-based.
  KSubset block(int i) const { return blocks_.at(static_cast<std::size_t>(i - 1)); }
  /// A_1 | ... | A_i.
  Mask prefix_union(int i) const;

  /// position[x] for each 0-based element x: the blocks' elements first (block
  /// order, increasing within a block), then the remaining elements increasing.
  /// Under this relabeling A_i becomes [r(i-1)+1, ri].
  std::vector<int> relabeling() const;

  friend bool operator==(const OrderedFamily&, const OrderedFamily&) = default;

private:
  int n_;
  int r_;
  std::vector<KSubset> blocks_;
};

std::string to_string(const OrderedFamily& family);

}  // namespace kneser
