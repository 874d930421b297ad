#include <sstream>

#include "doctest.h"
#include "kneser/colorings.hpp"
#include "kneser/errors.hpp"
#include "oracles.hpp"

using namespace kneser;

namespace {
KSubset S(std::initializer_list<int> one_based) {
  std::vector<int> v;
  for (int x : one_based) v.push_back(x - 1);
  return KSubset::from_elements(v);
}

// Monochromatic disjoint pairs, counted straight from the masks.
std::uint64_t brute_mono(const Coloring& c) {
  const auto verts = oracle::subsets(c.params().n, c.params().k);
  std::uint64_t mono = 0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      if ((verts[i] & verts[j]) == 0 && c.color(i) != 0 && c.color(i) == c.color(j)) ++mono;
  return mono;
}
}  // namespace

TEST_CASE("constant coloring") {
  const auto c = constant_coloring({6, 3, 2});
  CHECK(c.color_count() == 1);
  CHECK(monochromatic_edges(c, full_view({6, 3, 2})) == 10);
  const auto rep = verify_proper(c, full_view({6, 3, 2}));
  CHECK_FALSE(rep.proper);
  CHECK(rep.violation_count == 10);
  CHECK(rep.violations.size() == 10);
}

TEST_CASE("canonical coloring is proper with n - 2k + 2 colors") {
  for (int k = 1; k <= 4; ++k)
    for (int n = 2 * k; n <= 12; ++n) {
      const auto c = canonical_coloring(n, k);
      REQUIRE(c.color_count() == n - 2 * k + 2);
      REQUIRE(c.is_total());
      REQUIRE(verify_proper(c, full_view({n, k, 2})).proper);
      REQUIRE(brute_mono(c) == 0);
    }
  const auto c = canonical_coloring(5, 2);
  CHECK(c.color(S({1, 4})) == 1);
  CHECK(c.color(S({2, 5})) == 2);
  CHECK(c.color(S({3, 4})) == 3);
  CHECK(c.color(S({4, 5})) == 3);
  CHECK_THROWS_AS(canonical_coloring(3, 2), std::invalid_argument);
}

TEST_CASE("merged canonical coloring") {
  CHECK(monochromatic_edges(merged_canonical(5, 2), full_view({5, 2, 2})) == 3);
  CHECK(monochromatic_edges(merged_canonical(6, 2), full_view({6, 2, 2})) == 3);
  CHECK(monochromatic_edges(merged_canonical(7, 3), full_view({7, 3, 2})) == 10);
  for (int k = 1; k <= 4; ++k)
    for (int n = 2 * k; n <= 12; ++n) {
      const auto c = merged_canonical(n, k);
      REQUIRE(c.color_count() == n - 2 * k + 1);
      REQUIRE(brute_mono(c) == oracle::choose(2 * k, k) / 2);
      REQUIRE(monochromatic_edges(c, full_view({n, k, 2})) == brute_mono(c));
    }
}

TEST_CASE("star-free coloring") {
  for (int k : {3, 4}) {
    const int n = 2 * (k - 1) * (k - 1);
    const auto c = starfree_coloring(k);
    REQUIRE(c.params().n == n);
    REQUIRE(c.color_count() == 2 * (k - 2) * (k - 1));
    REQUIRE(c.color_count() == n - 2 * k + 2);
    REQUIRE(c.is_total());
    REQUIRE(verify_proper(c, full_view({n, k, 2})).proper);
    for (int col = 1; col <= c.color_count(); ++col) {
      const auto cls = c.color_class(col);
      REQUIRE_FALSE(cls.empty());
      REQUIRE(is_intersecting(cls));
      REQUIRE_FALSE(star_center(cls).has_value());
    }
  }
  // Block 1 of k = 3 is {1,2,3,4}: H_1 is color 1, G is color 2.
  const auto c = starfree_coloring(3);
  CHECK(c.color(S({2, 3, 5})) == 2);
  CHECK(c.color(S({2, 3, 4})) == 1);
  CHECK_THROWS_AS(starfree_coloring(2), std::invalid_argument);
}

TEST_CASE("triple-block coloring") {
  struct Case {
    int n, k, colors;
    std::uint64_t uncolored;
  };
  for (auto [n, k, colors, uncolored] : {Case{6, 2, 2, 9}, Case{9, 3, 3, 27}, Case{7, 2, 3, 9}, Case{12, 4, 4, 81}}) {
    const auto c = triple_block_coloring(n, k);
    CHECK(c.color_count() == colors);
    CHECK(c.uncolored_count() == uncolored);
    CHECK(c.uncolored().size() == uncolored);
    CHECK(brute_mono(c) == 0);
    CHECK(monochromatic_edges(c, full_view({n, k, 2})) == 0);
    CHECK_THROWS_AS(verify_proper(c, full_view({n, k, 2})), std::invalid_argument);
    // Colored count.
    std::vector<KSubset> keep;
    for (KSubset s : enumerate_k_subsets(n, k))
      if (c.color(s) != 0) keep.push_back(s);
    CHECK(keep.size() == oracle::choose(n, k) - uncolored);
  }
  // (7,2): a set containing 1 takes the star color.
  const auto c = triple_block_coloring(7, 2);
  CHECK(c.color(S({1, 7})) == 1);
  CHECK(c.color(S({2, 3})) == 2);
  CHECK(c.color(S({2, 5})) == 0);
  CHECK_THROWS_AS(triple_block_coloring(5, 2), std::invalid_argument);
}

TEST_CASE("empty-family coloring") {
  // p = 0: every family is empty, so the coloring is proper on the sample.
  const auto g0 = sample_subgraph({9, 2, 2}, {0, 1}, 0);
  for (int l = 1; l <= 4; ++l) {
    const auto A = OrderedFamily::consecutive(9, 2, l);
    const auto ec = empty_family_coloring(A, {9, 2, 2});
    CHECK(ec.coloring.color_count() == 9 - l);
    CHECK(verify_proper(ec.coloring, view(g0)).proper);
  }
  // Hypergraph: ceil((n - l)/(r - 1)) colors.
  const auto A3 = OrderedFamily::consecutive(10, 3, 2);
  CHECK(empty_family_coloring(A3, {10, 2, 3}).coloring.color_count() == 4);

  // One block of size 2 is always empty in KG_{n,2}; the coloring is proper on the full graph.
  const OrderedFamily single(7, 2, {S({3, 6})});
  const auto ec = empty_family_coloring(single, {7, 2, 2});
  CHECK(ec.coloring.color_count() == 6);
  CHECK(verify_proper(ec.coloring, full_view({7, 2, 2})).proper);
  CHECK(ec.position[2] == 0);
  CHECK(ec.position[5] == 1);
  CHECK(ec.position[0] == 2);
  CHECK(ec.coloring.color(S({3, 6})) == 1);

  // With k = 1 the block {1,2} spans an edge, and the coloring is improper.
  const auto bad = empty_family_coloring(OrderedFamily::consecutive(5, 2, 1), {5, 1, 2});
  CHECK_FALSE(verify_proper(bad.coloring, full_view({5, 1, 2})).proper);

  CHECK_THROWS_AS(empty_family_coloring(single, {8, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(empty_family_coloring(single, {7, 2, 3}), std::invalid_argument);
}

TEST_CASE("Schrijver ratio") {
  CHECK(schrijver_ratio_bound(5, 2) == Rational{3, 1});
  CHECK(schrijver_ratio_bound(6, 2) == Rational{5, 2});
  CHECK(schrijver_ratio_bound(7, 3) == Rational{10, 1});
  CHECK(schrijver_ratio_bound(6, 2).to_string() == "5/2");
  CHECK(schrijver_ratio_bound(6, 2).ceil() == 3);
  // The ceiling never exceeds the merged construction's count.
  for (int k = 2; k <= 3; ++k)
    for (int n = 2 * k + 1; n <= 9; ++n)
      REQUIRE(schrijver_ratio_bound(n, k).ceil() <= oracle::choose(2 * k, k) / 2);
  CHECK_THROWS_AS(schrijver_ratio_bound(5, 3), UndefinedError);
}

TEST_CASE("coloring file round trip") {
  for (const auto& c : {canonical_coloring(7, 2), triple_block_coloring(7, 2), starfree_coloring(3)}) {
    std::stringstream io;
    c.write(io);
    const auto back = Coloring::read(io);
    CHECK(back == c);
  }
  std::stringstream bad("kneser-coloring v1 5 2 2 3 x\n3 1\n2 1\n");
  CHECK_THROWS_AS(Coloring::read(bad), std::invalid_argument);
  std::stringstream range("kneser-coloring v1 5 2 2 3 x\n10 1\n");
  CHECK_THROWS_AS(Coloring::read(range), std::invalid_argument);
  CHECK_THROWS_AS(Coloring({5, 2, 2}, 2, std::vector<int>(10, 3), "x"), std::invalid_argument);
  CHECK_THROWS_AS(Coloring({5, 2, 2}, 2, std::vector<int>(9, 1), "x"), std::invalid_argument);
}

TEST_CASE("verification rows") {
  VerificationRow row{"starfree", 8, 3, 2, "4", "true", "0", "0", true};
  CHECK(to_csv(row) == "starfree,8,3,2,4,true,0,0");
}
