#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "doctest.h"
#include "kneser/errors.hpp"
#include "kneser/kneser.hpp"
#include "kneser/random.hpp"
#include "oracles.hpp"

using namespace kneser;

namespace {
KSubset S(std::initializer_list<int> zero_based) {
  std::vector<int> v(zero_based);
  return KSubset::from_elements(v);
}
}  // namespace

TEST_CASE("edge_count examples and brute force") {
  CHECK(edge_count({5, 2, 2}) == 15);
  CHECK(edge_count({6, 2, 2}) == 45);
  CHECK(edge_count({6, 2, 3}) == 15);
  for (int n = 2; n <= 10; ++n)
    for (int k = 1; k <= 3; ++k)
      for (int r = 2; r <= 3; ++r) {
        if (k > n) continue;
        REQUIRE(edge_count({n, k, r}) == oracle::hyperedges(n, k, r));
      }
  CHECK(edge_count({4, 3, 2}) == 0);
  CHECK_THROWS_AS(edge_count({64, 8, 4}), SizeError);
}

TEST_CASE("params validation") {
  CHECK_THROWS_AS((KneserParams{0, 1, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((KneserParams{65, 1, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((KneserParams{5, 0, 2}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((KneserParams{5, 2, 1}.validate()), std::invalid_argument);
  CHECK_FALSE(KneserParams{5, 3, 2}.has_edges());
}

TEST_CASE("edge index is the lexicographic list of sorted disjoint rank tuples") {
  for (auto params : {KneserParams{6, 2, 2}, KneserParams{7, 2, 3}, KneserParams{8, 2, 2}}) {
    EdgeIndex index(params);
    const auto verts = oracle::subsets(params.n, params.k);
    std::vector<std::vector<std::uint64_t>> expected;
    // All sorted r-tuples of vertex ranks, filtered for disjointness, in lex order.
    std::vector<std::uint64_t> t;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (static_cast<int>(t.size()) == params.r) {
        oracle::Mask used = 0;
        for (auto i : t) {
          if (used & verts[i]) return;
          used |= verts[i];
        }
        expected.push_back(t);
        return;
      }
      for (std::size_t i = start; i < verts.size(); ++i) {
        t.push_back(i);
        rec(i + 1);
        t.pop_back();
      }
    };
    rec(0);
    REQUIRE(index.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      auto e = index.edge(i);
      REQUIRE(std::vector<std::uint64_t>(e.begin(), e.end()) == expected[i]);
      REQUIRE(index.index_of(expected[i]) == i);
    }
    const std::vector<std::uint64_t> bad(static_cast<std::size_t>(params.r), 0);
    CHECK_FALSE(index.index_of(bad).has_value());
  }
}

TEST_CASE("p = 0 and p = 1 samples") {
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    auto none = sample_subgraph({7, 2, 2}, {0, 1}, seed);
    CHECK(none.present_count() == 0);
    auto all = sample_subgraph({7, 2, 2}, {1, 1}, seed);
    CHECK(all.present_count() == edge_count({7, 2, 2}));
    const EdgeId e{rank_colex(S({0, 1})), rank_colex(S({2, 3}))};
    CHECK(all.contains_edge(e));
    CHECK_FALSE(none.contains_edge(e));
  }
}

TEST_CASE("pinned sample (10,2,2), p = 1/2, seed 42") {
  const auto g = sample_subgraph({10, 2, 2}, {1, 2}, 42);
  CHECK(g.edge_total() == 630);
  CHECK(g.present_count() == 304);
  const double mean = 315.0, sigma = std::sqrt(630.0 / 4.0);
  CHECK(std::abs(static_cast<double>(g.present_count()) - mean) < 4 * sigma);
}

TEST_CASE("sampling is deterministic and order independent") {
  const auto a = sample_subgraph({8, 2, 2}, {1, 2}, 5);
  const auto b = sample_subgraph({8, 2, 2}, {1, 2}, 5);
  REQUIRE(a.edge_total() == b.edge_total());
  for (std::uint64_t i = 0; i < a.edge_total(); ++i) REQUIRE(a.contains_index(i) == b.contains_index(i));
  CHECK(a == b);
  const auto c = sample_subgraph({8, 2, 2}, {1, 2}, 6);
  CHECK_FALSE(a == c);
  // Presence is the documented coin: high 32 bits of the hash below floor(p * 2^32).
  const Probability p{1, 3};
  const auto g = sample_subgraph({7, 2, 2}, p, 11);
  for (std::uint64_t i = 0; i < g.edge_total(); ++i) REQUIRE(g.contains_index(i) == ((coin_hash(11, i) >> 32) < p.threshold()));
}

TEST_CASE("present edges are valid disjoint tuples") {
  const auto g = sample_subgraph({9, 2, 3}, {1, 2}, 3);
  std::uint64_t seen = 0;
  for (std::uint64_t i = 0; i < g.edge_total(); ++i) {
    if (!g.contains_index(i)) continue;
    ++seen;
    Mask used = 0;
    for (auto v : g.edges().edge(i)) {
      const auto s = unrank_colex(v, 2, 9);
      REQUIRE((used & s.mask()) == 0);
      used |= s.mask();
    }
  }
  CHECK(seen == g.present_count());
}

TEST_CASE("contains_edge rejects invalid tuples") {
  const auto g = full_graph({6, 2, 2});
  const EdgeId overlapping{rank_colex(S({0, 1})), rank_colex(S({1, 2}))};
  CHECK_THROWS_AS(g.contains_edge(overlapping), std::invalid_argument);
  const EdgeId unsorted{rank_colex(S({2, 3})), rank_colex(S({0, 1}))};
  CHECK_THROWS_AS(g.contains_edge(unsorted), std::invalid_argument);
  const EdgeId short_tuple{0};
  CHECK_THROWS_AS(g.contains_edge(short_tuple), std::invalid_argument);
  const std::vector<KSubset> sets{S({2, 3}), S({0, 1})};
  CHECK(g.contains_edge(sets));
}

TEST_CASE("probability parsing") {
  CHECK(Probability::parse("1/2") == Probability{1, 2});
  CHECK(Probability::parse("1") == Probability{1, 1});
  CHECK(Probability::parse("0") == Probability{0, 1});
  CHECK(Probability{1, 2}.threshold() == (std::uint64_t{1} << 31));
  CHECK(Probability{1, 1}.threshold() == (std::uint64_t{1} << 32));
  CHECK_THROWS_AS(Probability::parse("3/2"), std::invalid_argument);
  CHECK_THROWS_AS(Probability::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Probability::parse("a/b"), std::invalid_argument);
}

TEST_CASE("sample file round trip") {
  for (auto params : {KneserParams{5, 2, 2}, KneserParams{8, 2, 2}, KneserParams{9, 2, 3}}) {
    const auto g = sample_subgraph(params, {3, 7}, 17);
    std::stringstream io;
    g.write(io);
    const auto text = io.str();
    const auto back = SampledGraph::read(io);
    CHECK(back == g);
    std::stringstream again;
    back.write(again);
    CHECK(again.str() == text);
  }
  std::stringstream small;
  sample_subgraph({5, 2, 2}, {1, 2}, 1).write(small);
  CHECK(small.str() == "kneser-sample v1 5 2 2 1 2 1\ncf92\n");
  std::stringstream bad("kneser-sample v1 5 2 2 1 2 1\nzz\n");
  CHECK_THROWS_AS(SampledGraph::read(bad), std::invalid_argument);
}

TEST_CASE("restriction") {
  const auto full = full_graph({6, 2, 2});
  const auto whole = restrict(full, prefix_mask(6));
  CHECK(whole.vertex_count() == 15);
  CHECK(whole.edge_count() == 45);
  const auto four = restrict(full, prefix_mask(4));
  CHECK(four.vertex_count() == 6);
  CHECK(four.edge_count() == 3);
  CHECK(restrict(full, 0b1).vertex_count() == 0);

  // Composition and agreement with the sample, on random subsets.
  const auto g = sample_subgraph({9, 2, 2}, {1, 2}, 8);
  Xoshiro256 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Mask R = rng.below(1u << 9);
    const Mask R2 = R & rng.below(1u << 9);
    const auto a = restrict(restrict(g, R), R2);
    const auto b = restrict(g, R2);
    REQUIRE(a.vertices() == b.vertices());
    REQUIRE(a.edge_count() == b.edge_count());
    for (std::size_t e = 0; e < a.edge_count(); ++e) REQUIRE(a.edge_id(e) == b.edge_id(e));
    for (std::size_t e = 0; e < b.edge_count(); ++e) REQUIRE(g.contains_edge(b.edge_id(e)));
    // Every present edge inside R2 shows up.
    std::uint64_t inside = 0;
    for (std::uint64_t i = 0; i < g.edge_total(); ++i) {
      if (!g.contains_index(i)) continue;
      bool in = true;
      for (auto v : g.edges().edge(i)) in = in && (unrank_colex(v, 2).mask() & ~R2) == 0;
      inside += in;
    }
    REQUIRE(inside == b.edge_count());
  }
}

TEST_CASE("Schrijver views") {
  const auto five = schrijver_view({5, 2, 2});
  CHECK(five.vertex_count() == 5);
  CHECK(five.edge_count() == 5);
  for (std::size_t v = 0; v < 5; ++v) CHECK(five.degree(v) == 2);

  for (auto [n, k] : std::vector<std::pair<int, int>>{{6, 2}, {7, 3}, {8, 3}}) {
    const auto sg = schrijver_view({n, k, 2});
    const auto brute = oracle::kneser(n, k, [n = n](oracle::Mask m) { return oracle::stable(m, n); });
    CHECK(sg.vertex_count() == brute.verts.size());
    CHECK(sg.edge_count() == oracle::edges(brute));
  }
  CHECK(schrijver_view({6, 2, 2}).vertex_count() == 9);
  CHECK(schrijver_view({7, 3, 2}).vertex_count() == 7);
  CHECK_THROWS_AS(schrijver_view({9, 2, 3}), UnsupportedError);
}

TEST_CASE("graph view adjacency agrees with disjointness") {
  const auto v = full_view({7, 3, 2});
  for (std::size_t a = 0; a < v.vertex_count(); ++a)
    for (std::size_t b = 0; b < v.vertex_count(); ++b)
      REQUIRE(v.adjacent(a, b) == (a != b && is_disjoint(v.vertex(a), v.vertex(b))));
  CHECK(v.local_index(S({0, 1, 2})) == 0u);
  CHECK_FALSE(restrict(v, prefix_mask(5)).local_index(S({0, 1, 6})).has_value());
}

TEST_CASE("materialization limit") {
  CHECK_THROWS_AS(sample_subgraph({40, 5, 2}, {1, 2}, 0), SizeError);
}
