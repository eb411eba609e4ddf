#include <doctest.h>

#include "dyadic/complexes.hpp"
#include "dyadic/error.hpp"
#include "dyadic/permute.hpp"
#include "generators.hpp"

using namespace dyadic;

namespace {

DyadicMeasureTree toy() { return build_tree(testgen::toy_sample(), FeatureOrder::identity(2)); }

}  // namespace

TEST_CASE("cycle notation") {
  auto g = FeaturePermutation::parse_cycles("(1 2)(5 7 9)", 9);
  CHECK(g(1) == 2);
  CHECK(g(2) == 1);
  CHECK(g(5) == 7);
  CHECK(g(7) == 9);
  CHECK(g(9) == 5);
  CHECK(g(3) == 3);
  CHECK(g.moved() == std::vector<int>{1, 2, 5, 7, 9});
  CHECK(g.to_cycles() == "(1 2)(5 7 9)");
  CHECK(FeaturePermutation::parse_cycles("()", 4).is_identity());
  CHECK(FeaturePermutation::parse_cycles("", 4).is_identity());
  CHECK(FeaturePermutation::parse_cycles("(1,3)", 3)(3) == 1);
  CHECK_THROWS_AS(FeaturePermutation::parse_cycles("(1 5)", 4), Error);
  CHECK_THROWS_AS(FeaturePermutation::parse_cycles("(1 2)(2 3)", 4), Error);
  CHECK_THROWS_AS(FeaturePermutation::parse_cycles("(1 2", 4), Error);
  CHECK_THROWS_AS(FeaturePermutation({1, 1}), Error);
}

TEST_CASE("composition and inverse") {
  auto a = FeaturePermutation::parse_cycles("(1 2 3)", 3);
  auto b = FeaturePermutation::parse_cycles("(1 2)", 3);
  CHECK((a * b)(1) == a(b(1)));
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.inverse().to_cycles() == "(1 3 2)");
}

TEST_CASE("path action") {
  auto g = FeaturePermutation::parse_cycles("(1 2 3)", 3);
  // q_{g(i)} = p_i: bit 1 moves to position 2, 2 to 3, 3 to 1
  CHECK(permute_path(DyadicPath("011"), g).str() == "101");
  CHECK(permute_path(DyadicPath("100"), g).str() == "010");
  auto e = FeaturePermutation::identity(3);
  CHECK(permute_path(DyadicPath("011"), e).str() == "011");

  std::mt19937 rng(8);
  for (int k = 0; k < 30; ++k) {
    auto s = testgen::random_sample(rng, 9, 30);
    auto leaves = build_tree(s, FeatureOrder::identity(s.n_features())).leaf_masses();
    auto h = testgen::random_permutation(rng, s.n_features());
    CHECK(permute_paths(permute_paths(leaves, h), h.inverse()) == leaves);
  }
}

TEST_CASE("recomputed coefficients") {
  auto t = toy();
  CHECK(recompute_coefficients(t, FeaturePermutation::identity(2)) == t);

  auto swapped = recompute_coefficients(t, FeaturePermutation::parse_cycles("(1 2)", 2));
  CHECK(swapped.coeff(DyadicPath("")) == Rational(1, 4));
  CHECK(swapped.order().perm == std::vector<int>{2, 1});
  // same tree as building with feature 2 first
  CHECK(swapped == build_tree(testgen::toy_sample(), FeatureOrder{{2, 1}, "x"}));

  std::mt19937 rng(21);
  for (int k = 0; k < 60; ++k) {
    auto s = testgen::random_sample(rng, 10, 50);
    auto order = testgen::random_order(rng, s.n_features());
    auto tree = build_tree(s, order);
    auto g = testgen::random_permutation(rng, s.n_features());
    auto moved = recompute_coefficients(tree, g);  // internal block checks throw on failure
    FeatureOrder expect;
    expect.perm.resize(order.perm.size());
    for (int i = 1; i <= g.size(); ++i) expect.perm[static_cast<std::size_t>(g(i) - 1)] = order.perm[static_cast<std::size_t>(i - 1)];
    CHECK(moved == build_tree(s, expect));
    CHECK(nerve_zero(moved) == nerve_zero(tree));
    CHECK(recompute_coefficients(moved, g.inverse()) == tree);
  }
  CHECK_THROWS_AS(recompute_coefficients(t, FeaturePermutation::identity(3)), Error);
}

TEST_CASE("group generation") {
  auto s3 = generate_group({FeaturePermutation::parse_cycles("(1 2)", 3), FeaturePermutation::parse_cycles("(1 2 3)", 3)}, 3);
  CHECK(s3.size() == 6);
  CHECK(generate_group({}, 4).size() == 1);
  auto s8 = std::vector<FeaturePermutation>{FeaturePermutation::parse_cycles("(1 2)", 8),
                                            FeaturePermutation::parse_cycles("(1 2 3 4 5 6 7 8)", 8)};
  CHECK_THROWS_AS(generate_group(s8, 8), Error);  // 40320 elements
  CHECK(generate_group(s8, 8, 50000).size() == 40320);
}

TEST_CASE("orbit average") {
  auto t = toy();
  CHECK(orbit_average(t, {}) == t);
  auto avg = orbit_average(t, {FeaturePermutation::parse_cycles("(1 2)", 2)});
  CHECK(avg.mass(DyadicPath("01")) == Rational(3, 2));
  CHECK(avg.mass(DyadicPath("10")) == Rational(3, 2));
  CHECK(avg.mass(DyadicPath("00")) == 3);
  CHECK(avg.mass(DyadicPath("11")) == 2);
  CHECK(avg.total() == t.total());

  // an absent orbit partner counts as zero mass
  auto lone = build_tree(FeatureSample(2, {{{1}, 4}}), FeatureOrder::identity(2));
  auto spread = orbit_average(lone, {FeaturePermutation::parse_cycles("(1 2)", 2)});
  CHECK(spread.mass(DyadicPath("01")) == 2);
  CHECK(spread.mass(DyadicPath("10")) == 2);
}
