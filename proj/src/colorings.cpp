#include "kneser/colorings.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kneser/errors.hpp"

namespace kneser {

Coloring::Coloring(KneserParams params, int colors, std::vector<int> color_of_rank, std::string provenance)
    : params_(params), colors_(colors), color_of_rank_(std::move(color_of_rank)), provenance_(std::move(provenance)) {
  params_.validate();
  if (colors_ < 0) throw std::invalid_argument("negative color count");
  if (color_of_rank_.size() != params_.vertex_count())
    throw std::invalid_argument("coloring must list one entry per vertex");
  for (int c : color_of_rank_)
    if (c < 0 || c > colors_) throw std::invalid_argument("color id outside 0..t");
  if (provenance_.empty() || provenance_.find_first_of(" \t\n") != std::string::npos)
    throw std::invalid_argument("provenance must be a single non-empty token");
}

std::uint64_t Coloring::uncolored_count() const {
  return static_cast<std::uint64_t>(std::count(color_of_rank_.begin(), color_of_rank_.end(), 0));
}

std::vector<std::uint64_t> Coloring::uncolored() const {
  std::vector<std::uint64_t> out;
  for (std::size_t r = 0; r < color_of_rank_.size(); ++r)
    if (color_of_rank_[r] == 0) out.push_back(r);
  return out;
}

Family Coloring::color_class(int c) const {
  Family f(params_.n, params_.k);
  std::uint64_t rank = 0;
  for (KSubset s : enumerate_k_subsets(params_.n, params_.k)) {
    if (color_of_rank_[rank] == c) f.insert(s);
    ++rank;
  }
  return f;
}

void Coloring::write(std::ostream& out) const {
  out << "kneser-coloring v1 " << params_.n << ' ' << params_.k << ' ' << params_.r << ' ' << colors_ << ' '
      << provenance_ << '\n';
  for (std::size_t r = 0; r < color_of_rank_.size(); ++r)
    if (color_of_rank_[r] != 0) out << r << ' ' << color_of_rank_[r] << '\n';
}

Coloring Coloring::read(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("empty coloring file");
  std::istringstream hs(header);
  std::string magic, version, provenance;
  KneserParams params;
  int colors = 0;
  if (!(hs >> magic >> version >> params.n >> params.k >> params.r >> colors >> provenance) ||
      magic != "kneser-coloring" || version != "v1")
    throw std::invalid_argument("malformed coloring header");
  params.validate();
  std::vector<int> assignment(params.vertex_count(), 0);
  std::string line;
  long long previous = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream ls(line);
    unsigned long long rank = 0;
    int color = 0;
    if (!(ls >> rank >> color)) throw std::invalid_argument("malformed coloring line '" + line + "'");
    if (rank >= assignment.size()) throw std::invalid_argument("rank out of range in coloring file");
    if (static_cast<long long>(rank) <= previous) throw std::invalid_argument("coloring ranks must ascend");
    if (color < 1) throw std::invalid_argument("listed ranks must carry a color >= 1");
    previous = static_cast<long long>(rank);
    assignment[rank] = color;
  }
  return Coloring(params, colors, std::move(assignment), provenance);
}

namespace {

void require_same_params(const Coloring& c, const GraphView& g) {
  if (!(c.params() == g.params())) throw std::invalid_argument("coloring and graph have different parameters");
}

// Common color of all vertices of edge e, or 0.
int edge_color(const Coloring& c, const GraphView& g, std::size_t e) {
  int color = -1;
  for (std::uint32_t v : g.edge(e)) {
    const int cv = c.color(g.vertex(v));
    if (cv == 0) return 0;
    if (color == -1)
      color = cv;
    else if (cv != color)
      return 0;
  }
  return color;
}

}  // namespace

ProperReport verify_proper(const Coloring& c, const GraphView& g) {
  require_same_params(c, g);
  for (KSubset v : g.vertices())
    if (c.color(v) == 0) throw std::invalid_argument("verify_proper needs every vertex colored; " + to_string(v) + " is not");
  ProperReport report;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (edge_color(c, g, e) == 0) continue;
    report.proper = false;
    ++report.violation_count;
    if (report.violations.size() < ProperReport::kMaxViolations) report.violations.push_back(g.edge_id(e));
  }
  return report;
}

std::uint64_t monochromatic_edges(const Coloring& c, const GraphView& g) {
  require_same_params(c, g);
  std::uint64_t count = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) count += edge_color(c, g, e) != 0;
  return count;
}

namespace {

template <typename ColorOf>
std::vector<int> assign(int n, int k, ColorOf&& color_of) {
  std::vector<int> out;
  out.reserve(binomial(n, k));
  for (KSubset s : enumerate_k_subsets(n, k)) out.push_back(color_of(s));
  return out;
}

void require_kneser_range(int n, int k, int factor) {
  if (k < 1 || n < 1 || n > kMaxGround) throw std::invalid_argument("need 1 <= k and 1 <= n <= 64");
  if (n < factor * k)
    throw std::invalid_argument("construction needs n >= " + std::to_string(factor) + "k");
}

}  // namespace

Coloring constant_coloring(const KneserParams& params) {
  params.validate();
  return Coloring(params, 1, std::vector<int>(params.vertex_count(), 1), "constant");
}

Coloring canonical_coloring(int n, int k) {
  require_kneser_range(n, k, 2);
  const int t = n - 2 * k + 2;
  auto colors = assign(n, k, [&](KSubset s) { return std::min(s.min_element() + 1, t); });
  return Coloring({n, k, 2}, t, std::move(colors), "canonical");
}

Coloring merged_canonical(int n, int k) {
  require_kneser_range(n, k, 2);
  const int t = n - 2 * k + 1;
  auto colors = assign(n, k, [&](KSubset s) { return std::min(s.min_element() + 1, t); });
  return Coloring({n, k, 2}, t, std::move(colors), "merged-canonical");
}

Coloring starfree_coloring(int k) {
  if (k < 3) throw std::invalid_argument("star-free construction needs k >= 3");
  const int n = 2 * (k - 1) * (k - 1);
  const int block = 2 * k - 2;
  const int m = 2 * k - 5;
  const int per_block = 2 * k - 4;
  const int t = (k - 1) * per_block;

  // Local masks (bit j = local label j+1).
  const Mask top = Mask{0b111} << (2 * k - 5);  // {2k-4, 2k-3, 2k-2}
  std::vector<Mask> special(static_cast<std::size_t>(m) + 1, 0);
  for (int i = 1; i <= m; ++i) {
    Mask f = top;
    for (int j = 1; j <= k - 3; ++j) f |= Mask{1} << (((i + j - 1) % m));  // label ((i+j-1) mod m) + 1
    special[static_cast<std::size_t>(i)] = f;
  }

  auto color_of = [&](KSubset s) {
    for (int b = 0; b < k - 1; ++b) {
      const Mask local = (s.mask() >> (b * block)) & prefix_mask(block);
      if (std::popcount(local) < 2) continue;
      // F_i stays in H_i; otherwise H_i can lose its only set avoiding i and become a star.
      for (int i = 1; i <= m; ++i)
        if (s.mask() == (special[static_cast<std::size_t>(i)] << (b * block))) return b * per_block + i;
      for (int i = 1; i <= m; ++i) {
        const Mask fi = special[static_cast<std::size_t>(i)];
        if (((local >> (i - 1)) & 1u) && (local & fi)) return b * per_block + i;
      }
      if (std::popcount(local & top) >= 2) return b * per_block + per_block;
    }
    return 0;
  };
  auto colors = assign(n, k, color_of);
  if (std::find(colors.begin(), colors.end(), 0) != colors.end())
    throw std::logic_error("star-free construction left a set uncovered");
  return Coloring({n, k, 2}, t, std::move(colors), "starfree");
}

Coloring triple_block_coloring(int n, int k) {
  require_kneser_range(n, k, 3);
  const int stars = n - 3 * k;
  auto color_of = [&](KSubset s) {
    if (s.min_element() < stars) return s.min_element() + 1;
    for (int j = 0; j < k; ++j) {
      const Mask triple = Mask{0b111} << (stars + 3 * j);
      if (std::popcount(s.mask() & triple) >= 2) return stars + j + 1;
    }
    return 0;
  };
  auto colors = assign(n, k, color_of);
  return Coloring({n, k, 2}, n - 2 * k, std::move(colors), "triple-block");
}

EmptyFamilyColoring empty_family_coloring(const OrderedFamily& blocks, const KneserParams& params) {
  params.validate();
  if (blocks.ground_size() != params.n) throw std::invalid_argument("family ground set differs from n");
  if (blocks.arity() != params.r) throw std::invalid_argument("family block size differs from r");
  const int n = params.n, r = params.r, l = blocks.length();
  const int t = (n - l + r - 2) / (r - 1);
  auto position = blocks.relabeling();
  auto color_of = [&](KSubset s) {
    int top = 0;  // 1-based relabeled maximum
    for (int x : s.elements()) top = std::max(top, position[static_cast<std::size_t>(x)] + 1);
    if (top <= r * l) return (top + r - 1) / r;
    return l + (top - r * l + r - 2) / (r - 1);
  };
  auto colors = assign(n, params.k, color_of);
  return {Coloring(params, t, std::move(colors), "empty-family"), std::move(position)};
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational schrijver_ratio_bound(int n, int k) {
  const KneserParams params{n, k, 2};
  params.validate();
  const std::uint64_t kg = edge_count(params);
  const std::uint64_t sg = schrijver_view(params).edge_count();
  if (sg == 0) throw UndefinedError("Schrijver graph has no edges");
  const std::uint64_t g = std::gcd(kg, sg);
  return {kg / g, sg / g};
}

std::string to_csv(const VerificationRow& row) {
  std::ostringstream out;
  out << row.construction << ',' << row.n << ',' << row.k << ',' << row.r << ',' << row.t << ',' << row.proper << ','
      << row.mono_edges << ',' << row.uncolored;
  return out.str();
}

}  // namespace kneser
