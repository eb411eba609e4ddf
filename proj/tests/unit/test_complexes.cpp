#include <doctest.h>

#include "dyadic/complexes.hpp"
#include "dyadic/error.hpp"
#include "generators.hpp"

using namespace dyadic;

namespace {

DyadicMeasureTree tree_of(const FeatureSample& s) { return build_tree(s, FeatureOrder::identity(s.n_features())); }

int v(int feature, int bit) { return encode_pair_vertex(feature, bit); }

}  // namespace

TEST_CASE("pair vertex encoding") {
  CHECK(v(1, 0) == 1);
  CHECK(v(1, 1) == 2);
  CHECK(v(2, 0) == 3);
  for (int i = 1; i < 40; ++i) {
    for (int b = 0; b < 2; ++b) {
      CHECK(pair_vertex_feature(v(i, b)) == i);
      CHECK(pair_vertex_bit(v(i, b)) == b);
    }
  }
}

TEST_CASE("toy nerves") {
  auto t = tree_of(testgen::toy_sample());
  CHECK(nerve_pairs(t).faces() ==
        std::vector<Face>{{v(1, 0), v(2, 0)}, {v(1, 0), v(2, 1)}, {v(1, 1), v(2, 0)}, {v(1, 1), v(2, 1)}});
  CHECK(nerve_zero(t).faces() == std::vector<Face>{{1, 2}});
  CHECK(nerve_one(t).faces() == std::vector<Face>{{1, 2}});

  auto single = tree_of(FeatureSample(2, {{{1, 2}, 1}}));
  CHECK(nerve_pairs(single).faces() == std::vector<Face>{{v(1, 0), v(2, 0)}});
}

TEST_CASE("textbook nerve as a counting measure") {
  // points a..e, S1={a,b,c}, S2={b,c,d}, S3={a,e}; membership is value 0
  FeatureSample s(3, {{{1, 3}, 1}, {{1, 2}, 2}, {{2}, 1}, {{3}, 1}});
  CHECK(nerve_zero(tree_of(s)).faces() == std::vector<Face>{{1, 2}, {1, 3}});
}

TEST_CASE("degenerate measures") {
  auto all_one = tree_of(FeatureSample(3, {{{}, 4}}));
  CHECK(nerve_zero(all_one).empty());
  auto all_zero = tree_of(FeatureSample(3, {{{1, 2, 3}, 4}}));
  CHECK(nerve_one(all_zero).empty());
  auto empty = DyadicMeasureTree::from_leaf_masses(3, FeatureOrder::identity(3), {});
  CHECK_THROWS_AS(nerve_zero(empty), Error);
}

TEST_CASE("vertices are original feature indices") {
  FeatureSample s(3, {{{3}, 5}, {{1, 3}, 1}});
  auto a = build_tree(s, FeatureOrder::identity(3));
  auto b = build_tree(s, FeatureOrder{{3, 2, 1}, "x"});
  CHECK(nerve_zero(a) == nerve_zero(b));
  CHECK(nerve_zero(a).faces() == std::vector<Face>{{1, 3}});
  CHECK(nerve_pairs(a) == nerve_pairs(b));
}

TEST_CASE("bit flip swaps N0 and N1") {
  std::mt19937 rng(3);
  for (int k = 0; k < 40; ++k) {
    auto s = testgen::random_sample(rng, 8, 30);
    std::vector<SampleRow> flipped;
    for (const auto& row : s.rows()) {
      Pattern p;
      for (int i = 1; i <= s.n_features(); ++i) {
        if (!std::binary_search(row.pattern.begin(), row.pattern.end(), i)) p.push_back(i);
      }
      flipped.push_back({p, row.count});
    }
    auto t = tree_of(s);
    auto f = tree_of(FeatureSample(s.n_features(), flipped));
    CHECK(nerve_one(f) == nerve_zero(t));
    CHECK(nerve_zero(f) == nerve_one(t));
  }
}

TEST_CASE("maximalize") {
  CHECK(maximalize({{1}, {1, 2}}).faces() == std::vector<Face>{{1, 2}});
  CHECK(maximalize({{3, 4}, {1, 2}}).faces() == std::vector<Face>{{1, 2}, {3, 4}});
  CHECK(maximalize({{2, 1}, {1, 2}, {}}).faces() == std::vector<Face>{{1, 2}});
  CHECK_THROWS_AS(MaximalFaceSet({{1}, {1, 2}}), Error);
  CHECK_THROWS_AS(MaximalFaceSet({{2, 1}}), Error);
}

TEST_CASE("face list io") {
  auto faces = read_face_list("# c\n3 1 2\n\n4 5\n");
  CHECK(faces == std::vector<Face>{{1, 2, 3}, {4, 5}});
  CHECK(write_face_list({{4, 5}, {1, 2, 3}}) == "1 2 3\n4 5\n");
  CHECK_THROWS(read_face_list("1 1\n"));
  CHECK_THROWS(read_face_list("1 x\n"));
}
