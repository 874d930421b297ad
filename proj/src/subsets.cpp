#include "kneser/subsets.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

#include "kneser/errors.hpp"

namespace kneser {
namespace {

using BinomialTable = std::array<std::array<std::uint64_t, kMaxGround + 1>, kMaxGround + 1>;

constexpr BinomialTable make_binomial_table() {
  BinomialTable t{};
  for (int n = 0; n <= kMaxGround; ++n) {
    t[n][0] = 1;
    for (int m = 1; m <= n; ++m) t[n][m] = t[n - 1][m - 1] + (m <= n - 1 ? t[n - 1][m] : 0);
  }
  return t;
}

constexpr BinomialTable kBinomial = make_binomial_table();

// Gosper's hack: next larger mask with the same popcount.
constexpr Mask next_same_popcount(Mask v) {
  const Mask c = v & (~v + 1);
  const Mask r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

}  // namespace

std::uint64_t binomial(int n, int m) {
  if (n < 0 || n > kMaxGround) throw std::out_of_range("binomial: n outside 0..64");
  if (m < 0 || m > n) return 0;
  return kBinomial[n][m];
}

KSubset KSubset::from_elements(std::span<const int> elements) {
  Mask mask = 0;
  for (int x : elements) {
    if (x < 0 || x >= kMaxGround) throw std::invalid_argument("element outside 0..63");
    const Mask bit = Mask{1} << x;
    if (mask & bit) throw std::invalid_argument("duplicate element " + std::to_string(x + 1));
    mask |= bit;
  }
  return KSubset(mask);
}

std::vector<int> KSubset::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (Mask m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

GroundSet::GroundSet(int n) : n_(n) {
  if (n < 1 || n > kMaxGround) throw std::invalid_argument("ground set size must be in 1..64");
}

std::uint64_t rank_colex(KSubset s) {
  std::uint64_t rank = 0;
  int i = 1;
  for (Mask m = s.mask(); m; m &= m - 1, ++i) rank += kBinomial[std::countr_zero(m)][i];
  return rank;
}

KSubset unrank_colex(std::uint64_t rank, int k) { return unrank_colex(rank, k, kMaxGround); }

KSubset unrank_colex(std::uint64_t rank, int k, int n) {
  if (k < 0 || n < 0 || n > kMaxGround || k > n) throw std::out_of_range("unrank_colex: bad (n, k)");
  if (rank >= kBinomial[n][k]) throw std::out_of_range("unrank_colex: rank " + std::to_string(rank) + " out of range");
  Mask mask = 0;
  int top = n - 1;
  for (int i = k; i >= 1; --i) {
    // largest a with C(a, i) <= rank
    while (kBinomial[top][i] > rank) --top;
    mask |= Mask{1} << top;
    rank -= kBinomial[top][i];
    --top;
  }
  return KSubset::from_mask(mask);
}

bool is_stable(KSubset s, int n) {
  const Mask m = s.mask();
  if (m & (m >> 1)) return false;
  // wrap-around pair {n-1, 0}
  return !(n >= 2 && s.contains(0) && s.contains(n - 1));
}

SubsetRange::iterator& SubsetRange::iterator::operator++() {
  if (remaining_ > 0 && --remaining_ > 0) current_ = next_same_popcount(current_);
  return *this;
}

SubsetRange::SubsetRange(int n, int k) {
  if (n < 0 || n > kMaxGround || k < 0) throw std::invalid_argument("enumerate_k_subsets: need 0 <= n <= 64, k >= 0");
  if (k > n) return;
  first_ = prefix_mask(k);
  count_ = kBinomial[n][k];
}

std::vector<KSubset> all_k_subsets(int n, int k) {
  SubsetRange range(n, k);
  std::vector<KSubset> out;
  out.reserve(range.size());
  for (KSubset s : range) out.push_back(s);
  return out;
}

std::string to_string(KSubset s) {
  std::string out = "{";
  bool first = true;
  for (Mask m = s.mask(); m; m &= m - 1) {
    if (!first) out += ',';
    out += std::to_string(std::countr_zero(m) + 1);
    first = false;
  }
  out += '}';
  return out;
}

std::optional<KSubset> parse_ksubset(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') return std::nullopt;
  text = text.substr(1, text.size() - 2);
  Mask mask = 0;
  int previous = 0;
  while (!text.empty()) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || value < 1 || value > kMaxGround || value <= previous) return std::nullopt;
    mask |= Mask{1} << (value - 1);
    previous = value;
    text.remove_prefix(static_cast<std::size_t>(ptr - text.data()));
    if (text.empty()) break;
    if (text.front() != ',') return std::nullopt;
    text.remove_prefix(1);
    if (text.empty()) return std::nullopt;
  }
  return KSubset::from_mask(mask);
}

}  // namespace kneser
