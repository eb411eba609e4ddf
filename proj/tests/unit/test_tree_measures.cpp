#include <doctest.h>

#include "dyadic/error.hpp"
#include "dyadic/tree_measures.hpp"
#include "generators.hpp"

using namespace dyadic;

namespace {

TreeStructuredMeasure ternary() {
  return parse_tree_measure(
      "# root\n"
      "1 1\n"
      "  1/3 1\n"
      "  1/3 0\n"
      "  1/3 0\n");
}

}  // namespace

TEST_CASE("ternary example") {
  auto t = ternary();
  auto a = general_coefficients(t);
  CHECK(a == std::vector<Rational>{0, 2, -1, -1});
  CHECK(general_path_formula(t, a, 0) == 1);
  CHECK(general_path_formula(t, a, 1) == 1);
  CHECK(check_orthogonality(t, a, 0) == 0);
  auto b = coefficient_bounds(t, a, 1);
  CHECK(b.lower == -1);
  CHECK(b.upper == 2);
  CHECK(b.upper_ok);
  CHECK_FALSE(coefficient_bounds(t, a, 1, true).upper_ok);
  CHECK(check_tree_lemma(t).ok());
  CHECK_FALSE(check_tree_lemma(t, true).ok());
}

TEST_CASE("proportional measures have zero coefficients") {
  auto t = parse_tree_measure("4 8\n  1 2\n  3 6\n    1 2\n    2 4\n");
  for (const auto& a : general_coefficients(t)) CHECK(a == 0);
}

TEST_CASE("zero subtrees") {
  auto t = parse_tree_measure("2 3\n  1 3\n  1 0\n    1/2 0\n    1/2 0\n");
  auto a = general_coefficients(t);
  CHECK(a[2] == -1);       // mu(n) = 0 below a massive parent
  CHECK(a[3] == 0);        // zero-mass parent
  CHECK(general_path_formula(t, a, 4) == 0);
  CHECK(check_tree_lemma(t).ok());
}

TEST_CASE("parser errors") {
  CHECK_THROWS_AS(parse_tree_measure("1 1\n\t1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_measure("1 1\n    1 1\n  1 1\n   1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_measure("1 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_measure("1\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_measure(""), Error);
  CHECK_THROWS_AS(parse_tree_measure("1 1\n  1/2 1\n      1/2 1\n"), ParseError);  // skipped level
  CHECK(parse_tree_measure("1 1\n    1/2 1\n    1/2 0\n").size() == 3);
  // children must add up
  CHECK_THROWS_AS(general_coefficients(parse_tree_measure("1 1\n  1/2 1\n")), Error);
  CHECK_THROWS_AS(general_coefficients(parse_tree_measure("1 1\n  0 0\n  1 1\n")), Error);
}

TEST_CASE("random trees satisfy the identities") {
  std::mt19937 rng(99);
  for (int k = 0; k < 100; ++k) {
    auto t = testgen::random_tree_measure(rng);
    CHECK_NOTHROW(t.validate());
    auto check = check_tree_lemma(t);
    CHECK(check.ok());
  }
}

TEST_CASE("uniform binary tree matches dyadic coefficients") {
  std::mt19937 rng(4);
  for (int k = 0; k < 40; ++k) {
    auto s = testgen::random_sample(rng, 6, 30);
    auto d = build_tree(s, FeatureOrder::identity(s.n_features()));
    auto t = uniform_binary_tree(d);
    auto a = general_coefficients(t);
    // node ids follow a left-first pre-order walk of the full binary tree
    std::size_t checked = 0;
    auto walk = [&](auto&& self, std::size_t id, const DyadicPath& path) -> void {
      const auto& kids = t.node(id).children;
      if (kids.empty()) return;
      REQUIRE(kids.size() == 2);
      CHECK(a[kids[0]] == d.coeff(path));
      CHECK(a[kids[1]] == -d.coeff(path));
      ++checked;
      self(self, kids[0], path.child(0));
      self(self, kids[1], path.child(1));
    };
    walk(walk, 0, DyadicPath{});
    CHECK(checked == (std::size_t{1} << s.n_features()) - 1);
  }
}

TEST_CASE("lemma report") {
  auto r = check_tree_lemma(ternary()).report;
  CHECK(r.rfind("node,parent,depth,nu,mu,coeff,path_formula,orthogonality,bounds\n", 0) == 0);
  CHECK(r.find("1,0,1,1/3,1/1,2/1,ok,-,[-1/1;2/1] ok\n") != std::string::npos);
  CHECK(r.find("bounds ok\n") != std::string::npos);
}
