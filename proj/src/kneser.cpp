#include "kneser/kneser.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kneser/errors.hpp"
#include "kneser/random.hpp"

namespace kneser {

void KneserParams::validate() const {
  if (n < 1 || n > kMaxGround) throw std::invalid_argument("n must be in 1..64");
  if (k < 1 || k > n) throw std::invalid_argument("k must be in 1..n");
  if (r < 2) throw std::invalid_argument("r must be at least 2");
}

std::uint64_t edge_count(const KneserParams& params) {
  params.validate();
  if (!params.has_edges()) return 0;
  // N_j = N_{j-1} * C(n - (j-1)k, k) / j counts unordered j-tuples of disjoint k-sets.
  unsigned __int128 count = 1;
  for (int j = 1; j <= params.r; ++j) {
    count = count * binomial(params.n - (j - 1) * params.k, params.k) / static_cast<unsigned>(j);
    if (count > static_cast<unsigned __int128>(~std::uint64_t{0})) throw SizeError("edge count exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(count);
}

void Probability::validate() const {
  if (den == 0) throw std::invalid_argument("probability denominator is zero");
  if (num > den) throw std::invalid_argument("probability exceeds 1");
}

std::uint64_t Probability::threshold() const {
  validate();
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) << 32) / den);
}

std::string Probability::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

Probability Probability::parse(std::string_view text) {
  auto parse_u64 = [](std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      throw std::invalid_argument("malformed probability '" + std::string(s) + "'");
    return v;
  };
  Probability p;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    p.num = parse_u64(text.substr(0, slash));
    p.den = parse_u64(text.substr(slash + 1));
  } else {
    p.num = parse_u64(text);
    p.den = 1;
  }
  p.validate();
  return p;
}

std::string to_string(const EdgeId& edge) {
  std::string out = "(";
  for (std::size_t i = 0; i < edge.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(edge[i]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

EdgeIndex::EdgeIndex(const KneserParams& params) : params_(params) {
  const std::uint64_t expected = edge_count(params);
  if (expected > kMaxEdges) throw SizeError("edge set too large to materialize: " + std::to_string(expected));
  const auto vertices = all_k_subsets(params.n, params.k);
  const int r = params.r;
  flat_.reserve(expected * static_cast<std::size_t>(r));

  std::vector<std::uint32_t> tuple(static_cast<std::size_t>(r));
  // Depth-first in increasing rank order yields lexicographic tuple order.
  auto extend = [&](auto&& self, int depth, std::size_t start, Mask used) -> void {
    if (depth == r) {
      flat_.insert(flat_.end(), tuple.begin(), tuple.end());
      return;
    }
    for (std::size_t v = start; v < vertices.size(); ++v) {
      if (vertices[v].mask() & used) continue;
      tuple[static_cast<std::size_t>(depth)] = static_cast<std::uint32_t>(v);
      self(self, depth + 1, v + 1, used | vertices[v].mask());
    }
  };
  if (params.has_edges()) extend(extend, 0, 0, 0);
  count_ = flat_.size() / static_cast<std::size_t>(r);
  if (count_ != expected) throw std::logic_error("edge enumeration disagrees with edge_count");
}

std::optional<std::uint64_t> EdgeIndex::index_of(std::span<const std::uint64_t> ranks) const {
  if (ranks.size() != static_cast<std::size_t>(params_.r)) return std::nullopt;
  auto less = [&](std::uint64_t i) {
    auto e = edge(i);
    return std::lexicographical_compare(e.begin(), e.end(), ranks.begin(), ranks.end());
  };
  std::uint64_t lo = 0, hi = count_;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (less(mid))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == count_) return std::nullopt;
  auto e = edge(lo);
  if (!std::equal(e.begin(), e.end(), ranks.begin(), ranks.end())) return std::nullopt;
  return lo;
}

std::shared_ptr<const EdgeIndex> shared_edge_index(const KneserParams& params) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const EdgeIndex>> cache;
  const auto key = std::make_tuple(params.n, params.k, params.r);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto index = std::make_shared<const EdgeIndex>(params);
  std::lock_guard lock(mutex);
  return cache.try_emplace(key, std::move(index)).first->second;
}

// ---------------------------------------------------------------------------

SampledGraph::SampledGraph(KneserParams params, Probability p, std::uint64_t seed,
                           std::shared_ptr<const EdgeIndex> index, DynBitset presence)
    : params_(params), p_(p), seed_(seed), index_(std::move(index)), presence_(std::move(presence)) {
  if (!index_ || !(index_->params() == params_)) throw std::invalid_argument("edge index does not match params");
  if (presence_.size() != index_->size()) throw std::invalid_argument("presence bitset has wrong length");
  present_count_ = presence_.count();
}

bool SampledGraph::contains_edge(const EdgeId& e) const {
  if (e.size() != static_cast<std::size_t>(params_.r)) throw std::invalid_argument("edge has wrong arity");
  const std::uint64_t vertices = params_.vertex_count();
  Mask used = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= vertices) throw std::invalid_argument("vertex rank out of range");
    if (i > 0 && e[i] <= e[i - 1]) throw std::invalid_argument("edge ranks not strictly increasing");
    const Mask m = unrank_colex(e[i], params_.k).mask();
    if (m & used) throw std::invalid_argument("edge vertices are not pairwise disjoint");
    used |= m;
  }
  auto idx = index_->index_of(e);
  if (!idx) throw std::logic_error("valid edge missing from index");
  return presence_.test(*idx);
}

bool SampledGraph::contains_edge(std::span<const KSubset> sets) const {
  EdgeId e;
  e.reserve(sets.size());
  for (KSubset s : sets) {
    if (s.size() != params_.k || !s.fits(params_.n)) throw std::invalid_argument("not a vertex of this graph");
    e.push_back(rank_colex(s));
  }
  std::sort(e.begin(), e.end());
  return contains_edge(e);
}

void SampledGraph::write(std::ostream& out) const {
  out << "kneser-sample v1 " << params_.n << ' ' << params_.k << ' ' << params_.r << ' ' << p_.num << ' ' << p_.den
      << ' ' << seed_ << '\n';
  // Hex digit j holds bits 4j..4j+3, least significant bit first.
  static constexpr char kHex[] = "0123456789abcdef";
  const std::uint64_t bits = presence_.size();
  std::string line;
  line.reserve((bits + 3) / 4 + 1);
  for (std::uint64_t j = 0; j * 4 < bits; ++j) {
    unsigned digit = 0;
    for (unsigned b = 0; b < 4 && j * 4 + b < bits; ++b)
      if (presence_.test(j * 4 + b)) digit |= 1u << b;
    line += kHex[digit];
  }
  out << line << '\n';
}

SampledGraph SampledGraph::read(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("empty sample file");
  std::istringstream hs(header);
  std::string magic, version;
  KneserParams params;
  Probability p;
  std::uint64_t seed = 0;
  if (!(hs >> magic >> version >> params.n >> params.k >> params.r >> p.num >> p.den >> seed) ||
      magic != "kneser-sample" || version != "v1")
    throw std::invalid_argument("malformed sample header");
  std::string extra;
  if (hs >> extra) throw std::invalid_argument("trailing data in sample header");
  params.validate();
  p.validate();
  auto index = shared_edge_index(params);
  std::string hex;
  std::getline(in, hex);
  if (!hex.empty() && hex.back() == '\r') hex.pop_back();
  const std::uint64_t bits = index->size();
  if (hex.size() != (bits + 3) / 4) throw std::invalid_argument("presence hex has wrong length");
  DynBitset presence(bits);
  for (std::uint64_t j = 0; j < hex.size(); ++j) {
    const char c = hex[j];
    unsigned digit;
    if (c >= '0' && c <= '9')
      digit = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      digit = static_cast<unsigned>(c - 'a' + 10);
    else
      throw std::invalid_argument("presence hex must be lowercase hexadecimal");
    for (unsigned b = 0; b < 4; ++b) {
      if (!((digit >> b) & 1u)) continue;
      if (j * 4 + b >= bits) throw std::invalid_argument("presence hex sets bits past the edge count");
      presence.set(j * 4 + b);
    }
  }
  return SampledGraph(params, p, seed, std::move(index), std::move(presence));
}

bool operator==(const SampledGraph& a, const SampledGraph& b) {
  return a.params_ == b.params_ && a.p_ == b.p_ && a.seed_ == b.seed_ && a.presence_ == b.presence_;
}

SampledGraph sample_subgraph(const KneserParams& params, Probability p, std::uint64_t seed) {
  params.validate();
  const std::uint64_t threshold = p.threshold();
  auto index = shared_edge_index(params);
  DynBitset presence(index->size());
  for (std::uint64_t i = 0; i < index->size(); ++i)
    if ((coin_hash(seed, i) >> 32) < threshold) presence.set(i);
  return SampledGraph(params, p, seed, std::move(index), std::move(presence));
}

SampledGraph full_graph(const KneserParams& params) { return sample_subgraph(params, Probability{1, 1}, 0); }

// ---------------------------------------------------------------------------

GraphView::GraphView(KneserParams params, Mask ground, std::vector<KSubset> vertices,
                     std::vector<std::uint32_t> flat_edges)
    : params_(params), ground_(ground), vertices_(std::move(vertices)), flat_(std::move(flat_edges)) {
  const auto r = static_cast<std::size_t>(params_.r);
  if (flat_.size() % r != 0) throw std::invalid_argument("edge list length not a multiple of r");
  edge_count_ = flat_.size() / r;
  incidence_.resize(vertices_.size());
  for (std::size_t e = 0; e < edge_count_; ++e)
    for (std::uint32_t v : edge(e)) incidence_[v].push_back(static_cast<std::uint32_t>(e));
  if (params_.r == 2) {
    adjacency_.assign(vertices_.size(), DynBitset(vertices_.size()));
    for (std::size_t e = 0; e < edge_count_; ++e) {
      auto uv = edge(e);
      adjacency_[uv[0]].set(uv[1]);
      adjacency_[uv[1]].set(uv[0]);
    }
  }
}

std::optional<std::uint32_t> GraphView::local_index(KSubset s) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), s);
  if (it == vertices_.end() || *it != s) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices_.begin());
}

EdgeId GraphView::edge_id(std::size_t i) const {
  EdgeId id;
  for (std::uint32_t v : edge(i)) id.push_back(rank(v));
  return id;
}

namespace {

constexpr std::uint32_t kAbsent = ~std::uint32_t{0};

// Vertices of the full vertex set contained in R, plus a global-rank -> local map.
std::pair<std::vector<KSubset>, std::vector<std::uint32_t>> contained_vertices(const KneserParams& params, Mask R) {
  std::vector<KSubset> vertices;
  std::vector<std::uint32_t> local(params.vertex_count(), kAbsent);
  std::uint64_t rank = 0;
  for (KSubset s : enumerate_k_subsets(params.n, params.k)) {
    if ((s.mask() & ~R) == 0) {
      local[rank] = static_cast<std::uint32_t>(vertices.size());
      vertices.push_back(s);
    }
    ++rank;
  }
  return {std::move(vertices), std::move(local)};
}

}  // namespace

GraphView view(const SampledGraph& g) { return restrict(g, prefix_mask(g.params().n)); }

GraphView restrict(const SampledGraph& g, Mask R) {
  const auto& params = g.params();
  R &= prefix_mask(params.n);
  auto [vertices, local] = contained_vertices(params, R);
  std::vector<std::uint32_t> flat;
  const auto& index = g.edges();
  const auto& presence = g.presence();
  for (std::size_t i = presence.find_first(); i < presence.size(); i = presence.find_next(i + 1)) {
    auto e = index.edge(i);
    bool inside = true;
    for (std::uint32_t v : e) inside = inside && local[v] != kAbsent;
    if (!inside) continue;
    for (std::uint32_t v : e) flat.push_back(local[v]);
  }
  return GraphView(params, R, std::move(vertices), std::move(flat));
}

GraphView restrict(const GraphView& g, Mask R) {
  R &= g.ground();
  std::vector<KSubset> vertices;
  std::vector<std::uint32_t> local(g.vertex_count(), kAbsent);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if ((g.vertex(v).mask() & ~R) == 0) {
      local[v] = static_cast<std::uint32_t>(vertices.size());
      vertices.push_back(g.vertex(v));
    }
  }
  std::vector<std::uint32_t> flat;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto tuple = g.edge(e);
    bool inside = true;
    for (std::uint32_t v : tuple) inside = inside && local[v] != kAbsent;
    if (!inside) continue;
    for (std::uint32_t v : tuple) flat.push_back(local[v]);
  }
  return GraphView(g.params(), R, std::move(vertices), std::move(flat));
}

GraphView schrijver_view(const KneserParams& params) {
  params.validate();
  if (params.r != 2) throw UnsupportedError("Schrijver graphs are defined for r = 2 only");
  std::vector<KSubset> vertices;
  for (KSubset s : enumerate_k_subsets(params.n, params.k))
    if (is_stable(s, params.n)) vertices.push_back(s);
  std::vector<std::uint32_t> flat;
  for (std::uint32_t u = 0; u < vertices.size(); ++u)
    for (std::uint32_t v = u + 1; v < vertices.size(); ++v)
      if (is_disjoint(vertices[u], vertices[v])) {
        flat.push_back(u);
        flat.push_back(v);
      }
  return GraphView(params, prefix_mask(params.n), std::move(vertices), std::move(flat));
}

GraphView full_view(const KneserParams& params) { return view(full_graph(params)); }

}  // namespace kneser
