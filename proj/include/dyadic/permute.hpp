#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/measure_tree.hpp"

namespace dyadic {

// Bijection on tree levels [1, n]. Acting on a path moves the bit at
// position i to position g(i).
class FeaturePermutation {
 public:
  FeaturePermutation() = default;
  // mapping[i - 1] = g(i); throws unless it is a bijection on [1, n].
  explicit FeaturePermutation(std::vector<int> mapping);

  static FeaturePermutation identity(int n);
  // Cycle notation such as "(1 2)(5 7 9)" or "()" on [1, n].
  static FeaturePermutation parse_cycles(std::string_view text, int n);

  int size() const noexcept { return static_cast<int>(mapping_.size()); }
  int operator()(int i) const { return mapping_.at(static_cast<std::size_t>(i - 1)); }
  const std::vector<int>& mapping() const noexcept { return mapping_; }
  // Positions with g(i) != i, ascending.
  std::vector<int> moved() const;
  bool is_identity() const;

  FeaturePermutation inverse() const;
  // (a * b)(i) = a(b(i))
  friend FeaturePermutation operator*(const FeaturePermutation& a, const FeaturePermutation& b);
  friend auto operator<=>(const FeaturePermutation&, const FeaturePermutation&) = default;

  std::string to_cycles() const;

 private:
  std::vector<int> mapping_;
};

// q_{g(i)} = p_i.
DyadicPath permute_path(const DyadicPath& path, const FeaturePermutation& g);
std::map<DyadicPath, Rational> permute_paths(const std::map<DyadicPath, Rational>& leaves,
                                             const FeaturePermutation& g);

// Coefficients after reordering the features by g, rebuilt exactly from the
// permuted leaves. The returned tree's feature order records which original
// feature now sits at each level. Checks that levels above the first moved
// position keep their coefficients and that subtrees below the last moved
// position are carried over as blocks; throws Inconsistent otherwise.
DyadicMeasureTree recompute_coefficients(const DyadicMeasureTree& tree, const FeaturePermutation& g);

// Closure of the generators under composition. Throws LimitExceeded past
// max_size elements.
std::vector<FeaturePermutation> generate_group(const std::vector<FeaturePermutation>& generators, int n,
                                               std::size_t max_size = 10080);

// Replaces each leaf mass with the mean over its orbit under the group
// generated by `generators`.
DyadicMeasureTree orbit_average(const DyadicMeasureTree& tree, const std::vector<FeaturePermutation>& generators,
                                std::size_t max_group_size = 10080);

}  // namespace dyadic
