#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "kneser/bitset.hpp"

namespace kneser {

/// Node and wall-clock limits shared by the exact searches.
class SearchLimit {
public:
  using Clock = std::chrono::steady_clock;

  SearchLimit(std::uint64_t node_limit, double seconds)
      : node_limit_(node_limit), deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                              std::chrono::duration<double>(seconds))) {}
  static SearchLimit unlimited() { return SearchLimit(~std::uint64_t{0}, 1e9); }

  /// Counts one node; true once a limit has been hit (sticky).
  bool tick() {
    ++nodes_;
    if (hit_) return true;
    if (nodes_ >= node_limit_) hit_ = true;
    else if ((nodes_ & 1023) == 0 && Clock::now() >= deadline_) hit_ = true;
    return hit_;
  }
  bool hit() const { return hit_; }
  std::uint64_t nodes() const { return nodes_; }

private:
  std::uint64_t node_limit_;
  Clock::time_point deadline_;
  std::uint64_t nodes_ = 0;
  bool hit_ = false;
};

struct CliqueResult {
  std::vector<std::uint32_t> clique;  // ascending vertex indices
  bool complete = true;               // false if the limit interrupted the search
};

/// Maximum clique by branch and bound with greedy-coloring bounds.
/// `adjacency[v]` must be symmetric and irreflexive.
CliqueResult max_clique(const std::vector<DynBitset>& adjacency, SearchLimit& limit);

/// Complement graph rows (irreflexive).
std::vector<DynBitset> complement(const std::vector<DynBitset>& adjacency);

}  // namespace kneser
