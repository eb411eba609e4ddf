#include <doctest.h>

#include "dyadic/error.hpp"
#include "dyadic/measure_tree.hpp"
#include "generators.hpp"

using namespace dyadic;

namespace {

DyadicMeasureTree toy() { return build_tree(testgen::toy_sample(), FeatureOrder::identity(2)); }

}  // namespace

TEST_CASE("toy coefficients by hand") {
  auto t = toy();
  CHECK(t.total() == 8);
  CHECK(t.coeff(DyadicPath("")) == 0);
  CHECK(t.coeff(DyadicPath("0")) == Rational(1, 2));
  CHECK(t.coeff(DyadicPath("1")) == 0);
  CHECK(t.mass(DyadicPath("00")) == 3);
  CHECK(t.mass(DyadicPath("01")) == 1);
  CHECK(t.mass(DyadicPath("10")) == 2);
  CHECK(t.mass(DyadicPath("11")) == 2);
  CHECK(t.coeff(DyadicPath("00")) == 0);  // leaves carry no split
}

TEST_CASE("pattern paths follow the processing order") {
  FeatureOrder order{{3, 1, 2}, "x"};
  CHECK(pattern_path({1}, order).str() == "101");
  CHECK(pattern_path({}, order).str() == "111");
  CHECK(pattern_path({2, 3}, order).str() == "010");
}

TEST_CASE("zero-mass convention") {
  // everything on the left at the root
  auto t = build_tree(FeatureSample(2, {{{1}, 4}, {{1, 2}, 2}}), FeatureOrder::identity(2));
  CHECK(t.coeff(DyadicPath("")) == 1);
  CHECK_FALSE(t.contains(DyadicPath("1")));
  CHECK(t.coeff(DyadicPath("1")) == 0);
  CHECK(t.mass(DyadicPath("11")) == 0);

  auto flat = build_tree(FeatureSample(1, {{{1}, 3}, {{}, 3}}), FeatureOrder::identity(1));
  CHECK(flat.coeff(DyadicPath("")) == 0);
}

TEST_CASE("product formula") {
  auto t = toy();
  CHECK(product_formula_eval(t, DyadicPath("00")) == 3);
  CHECK(product_formula_eval(t, DyadicPath("")) == 8);
  auto skew = build_tree(FeatureSample(2, {{{1}, 4}}), FeatureOrder::identity(2));
  CHECK(product_formula_eval(skew, DyadicPath("10")) == 0);
  CHECK(product_formula_eval(skew, DyadicPath("1")) == 0);

  std::mt19937 rng(5);
  for (int k = 0; k < 100; ++k) {
    auto s = testgen::random_sample(rng, 8, 40);
    auto tree = build_tree(s, testgen::random_order(rng, s.n_features()));
    for (const auto& [path, data] : tree.nodes()) CHECK(product_formula_eval(tree, path) == data.mass);
  }
}

TEST_CASE("reconstruction") {
  auto t = toy();
  CHECK(reconstruct_tree(t.coefficients(), t.total(), 2, t.order()) == t);

  auto uniform = reconstruct_tree({}, Rational(1), 3);
  CHECK(uniform.leaf_masses().size() == 8);
  for (const auto& [leaf, mass] : uniform.leaf_masses()) CHECK(mass == Rational(1, 8));

  auto left = reconstruct_tree({{DyadicPath(""), Rational(1)}}, Rational(5), 2);
  CHECK(left.mass(DyadicPath("00")) == Rational(5, 2));
  CHECK(left.mass(DyadicPath("1")) == 0);

  CHECK_THROWS_AS(reconstruct_tree({{DyadicPath(""), Rational(3, 2)}}, Rational(1), 2), Error);
  // a coefficient below a node the mass never reaches
  CHECK_THROWS_AS(reconstruct_tree({{DyadicPath(""), Rational(1)}, {DyadicPath("1"), Rational(1, 2)}}, Rational(1), 2),
                  Error);
}

TEST_CASE("support") {
  auto t = toy();
  CHECK(support(t, 2) == std::set<DyadicPath>{DyadicPath("00"), DyadicPath("01"), DyadicPath("10"), DyadicPath("11")});
  CHECK(support(t, 0) == std::set<DyadicPath>{DyadicPath("")});
  CHECK(support(DyadicMeasureTree::from_leaf_masses(2, FeatureOrder::identity(2), {}), 0).empty());
}

TEST_CASE("haar functions and interval embedding") {
  CHECK(haar_value({DyadicPath("")}, DyadicPath("01")) == 1);
  CHECK(haar_value({DyadicPath("")}, DyadicPath("10")) == -1);
  CHECK(haar_value({DyadicPath("0")}, DyadicPath("10")) == 0);

  auto root = unit_interval_embedding(DyadicPath(""));
  CHECK(root.begin() == 0);
  CHECK(root.end() == 1);
  auto one = unit_interval_embedding(DyadicPath("1"));
  CHECK(one.begin() == Rational(1, 2));
  CHECK(one.end() == 1);
  auto zo = unit_interval_embedding(DyadicPath("01"));
  CHECK(zo.begin() == Rational(1, 4));
  CHECK(zo.end() == Rational(1, 2));
}

TEST_CASE("conditional skew") {
  auto t = toy();
  CHECK(conditional_skew(t, DyadicPath("0")) == Rational(1, 2));
  CHECK(conditional_skew(t, DyadicPath("1")) == 0);
  auto left = build_tree(FeatureSample(1, {{{1}, 2}}), FeatureOrder::identity(1));
  CHECK(conditional_skew(left, DyadicPath("")) == 1);
}

TEST_CASE("coefficient dump round trip") {
  std::mt19937 rng(17);
  for (int k = 0; k < 30; ++k) {
    auto s = testgen::random_sample(rng, 10, 50);
    auto t = build_tree(s, testgen::random_order(rng, s.n_features()));
    auto back = read_coefficient_dump(write_coefficient_dump(t));
    CHECK(back == t);
    CHECK(back.order().perm == t.order().perm);
  }
  CHECK_THROWS(read_coefficient_dump("{not json"));
}

TEST_CASE("paths") {
  CHECK_THROWS(DyadicPath("012"));
  DyadicPath p("0110");
  CHECK(p.parent().str() == "011");
  CHECK(p.prefix(2).str() == "01");
  CHECK(p.child(1).str() == "01101");
  CHECK(DyadicPath("01").is_prefix_of(p));
  CHECK_FALSE(DyadicPath("1").is_prefix_of(p));
}
