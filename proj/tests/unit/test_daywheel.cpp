#include <doctest.h>

#include <regex>

#include "dyadic/daywheel.hpp"
#include "dyadic/error.hpp"
#include "generators.hpp"

using namespace dyadic;

namespace {

// data-path -> fill
std::map<std::string, std::string> fills(const std::string& svg) {
  std::map<std::string, std::string> out;
  static const std::regex re("data-path=\"([01]*)\" data-coeff=\"[^\"]*\" fill=\"(#[0-9a-f]{6})\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    out[(*it)[1]] = (*it)[2];
  }
  return out;
}

}  // namespace

TEST_CASE("colour ramp") {
  CHECK(coefficient_color(Rational(1)) == Rgb{1, 0, 0});
  CHECK(coefficient_color(Rational(0)) == Rgb{1, 0, 1});
  CHECK(coefficient_color(Rational(-1)) == Rgb{0, 0, 1});
  CHECK(coefficient_color(Rational(1, 2)) == Rgb{1, 0, 0.5});
  CHECK(coefficient_color(Rational(-1, 2)) == Rgb{0.5, 0, 1});
  CHECK_THROWS_AS(coefficient_color(Rational(3, 2)), Error);
  CHECK(to_hex({1, 0, 0.5}) == "#ff0080");
  CHECK(to_hex({0, 1, 0}) == "#00ff00");
}

TEST_CASE("toy wheel") {
  auto t = build_tree(testgen::toy_sample(), FeatureOrder::identity(2));
  auto svg = render_daywheel(t, {.levels = 2});
  auto f = fills(svg);
  CHECK(f.size() == 7);
  CHECK(f.at("") == "#ff00ff");
  CHECK(f.at("0") == "#ff0080");
  CHECK(f.at("1") == "#ff00ff");
  CHECK(render_daywheel(t, {.levels = 2}) == svg);
  CHECK(svg.find("data-coeff=\"1/2\"") != std::string::npos);
}

TEST_CASE("sector counts") {
  std::mt19937 rng(6);
  auto s = testgen::random_sample(rng, 12, 60);
  while (s.n_features() < 5) s = testgen::random_sample(rng, 12, 60);
  auto t = build_tree(s, FeatureOrder::identity(s.n_features()));
  for (int levels = 1; levels <= 5; ++levels) {
    auto f = fills(render_daywheel(t, {.levels = levels, .radius_px = 100}));
    CHECK(f.size() == (std::size_t{1} << (levels + 1)) - 1);
  }
}

TEST_CASE("flat and one-sided measures") {
  // every leaf equally weighted: all purple
  std::vector<SampleRow> rows;
  for (int m = 0; m < 8; ++m) {
    Pattern p;
    for (int i = 0; i < 3; ++i) {
      if (m >> i & 1) p.push_back(i + 1);
    }
    rows.push_back({p, 2});
  }
  auto flat = build_tree(FeatureSample(3, rows), FeatureOrder::identity(3));
  for (const auto& [path, fill] : fills(render_daywheel(flat, {.levels = 3}))) CHECK(fill == "#ff00ff");

  auto left = build_tree(FeatureSample(3, {{{1}, 3}, {{1, 2}, 1}}), FeatureOrder::identity(3));
  for (const auto& [path, fill] : fills(render_daywheel(left, {.levels = 3}))) {
    if (!path.empty() && path[0] == '1') CHECK(fill == "#00ff00");
  }
  CHECK(fills(render_daywheel(left, {.levels = 3})).at("") == "#ff0000");
}

TEST_CASE("daywheel argument checks") {
  auto t = build_tree(testgen::toy_sample(), FeatureOrder::identity(2));
  CHECK_THROWS_AS(render_daywheel(t, {.levels = 3}), Error);
  CHECK_THROWS_AS(render_daywheel(t, {.levels = 0}), Error);
  CHECK_THROWS_AS(render_daywheel(t, {.levels = 2, .radius_px = 0}), Error);
}
