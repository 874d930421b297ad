#include "kneser/ordered_family.hpp"

#include <stdexcept>

namespace kneser {

OrderedFamily::OrderedFamily(int n, int r, std::vector<KSubset> blocks) : n_(n), r_(r), blocks_(std::move(blocks)) {
  if (n < 1 || n > kMaxGround) throw std::invalid_argument("ground set must be in 1..64");
  if (r < 1) throw std::invalid_argument("block size must be positive");
  Mask used = 0;
  for (KSubset b : blocks_) {
    if (b.size() != r) throw std::invalid_argument("block " + to_string(b) + " does not have r elements");
    if (!b.fits(n)) throw std::invalid_argument("block " + to_string(b) + " is not inside [n]");
    if (b.mask() & used) throw std::invalid_argument("block " + to_string(b) + " overlaps an earlier block");
    used |= b.mask();
  }
}

OrderedFamily OrderedFamily::consecutive(int n, int r, int l) {
  if (l < 0 || r * l > n) throw std::invalid_argument("need 0 <= r*l <= n");
  std::vector<KSubset> blocks;
  for (int i = 0; i < l; ++i) blocks.push_back(KSubset::from_mask(prefix_mask(r) << (r * i)));
  return OrderedFamily(n, r, std::move(blocks));
}

Mask OrderedFamily::prefix_union(int i) const {
  Mask m = 0;
  for (int j = 0; j < i; ++j) m |= blocks_.at(static_cast<std::size_t>(j)).mask();
  return m;
}

std::vector<int> OrderedFamily::relabeling() const {
  std::vector<int> position(static_cast<std::size_t>(n_), -1);
  int next = 0;
  for (KSubset b : blocks_)
    for (int x : b.elements()) position[static_cast<std::size_t>(x)] = next++;
  for (int x = 0; x < n_; ++x)
    if (position[static_cast<std::size_t>(x)] < 0) position[static_cast<std::size_t>(x)] = next++;
  return position;
}

std::string to_string(const OrderedFamily& family) {
  std::string out = "(";
  for (std::size_t i = 0; i < family.blocks().size(); ++i) {
    if (i) out += ',';
    out += to_string(family.blocks()[i]);
  }
  return out + ")";
}

}  // namespace kneser
