#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "dyadic/ingest.hpp"
#include "dyadic/rational.hpp"

namespace dyadic {

// Root-to-node label. Bit 0 is the left child, i.e. the items whose feature
// at that level has value 0. The empty path is the root.
class DyadicPath {
 public:
  DyadicPath() = default;
  // Throws on characters other than '0' and '1'.
  explicit DyadicPath(std::string_view bits);

  std::size_t level() const noexcept { return bits_.size(); }
  bool is_root() const noexcept { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_.at(i) == '1' ? 1 : 0; }
  const std::string& str() const noexcept { return bits_; }

  DyadicPath child(int bit) const;
  DyadicPath parent() const;
  DyadicPath prefix(std::size_t length) const;
  bool is_prefix_of(const DyadicPath& other) const noexcept;

  friend auto operator<=>(const DyadicPath&, const DyadicPath&) = default;

 private:
  std::string bits_;
};

struct NodeData {
  Rational mass;
  Rational coeff;
};

// Sparse dyadic measure with its product coefficients. Only nodes of nonzero
// mass are stored; an absent node has mass 0 and coefficient 0. Leaves sit at
// level maxscale.
class DyadicMeasureTree {
 public:
  DyadicMeasureTree() = default;

  // Sums the given level-maxscale masses upward and derives every coefficient.
  static DyadicMeasureTree from_leaf_masses(int maxscale, FeatureOrder order,
                                            const std::map<DyadicPath, Rational>& leaves, std::string label = {});

  int maxscale() const noexcept { return maxscale_; }
  const FeatureOrder& order() const noexcept { return order_; }
  const std::string& label() const noexcept { return label_; }
  const Rational& total() const noexcept { return total_; }
  const std::map<DyadicPath, NodeData>& nodes() const noexcept { return nodes_; }

  bool contains(const DyadicPath& path) const { return nodes_.count(path) != 0; }
  Rational mass(const DyadicPath& path) const;
  Rational coeff(const DyadicPath& path) const;

  std::map<DyadicPath, Rational> leaf_masses() const;
  // Coefficients of all stored nodes (zeros included).
  std::map<DyadicPath, Rational> coefficients() const;

  friend bool operator==(const DyadicMeasureTree& a, const DyadicMeasureTree& b);

 private:
  int maxscale_ = 0;
  FeatureOrder order_;
  std::string label_;
  Rational total_;
  std::map<DyadicPath, NodeData> nodes_;
};

// Leaf path of a pattern under the processing order.
DyadicPath pattern_path(const Pattern& pattern, const FeatureOrder& order);

DyadicMeasureTree build_tree(const FeatureSample& sample, const FeatureOrder& order);

// total * prod over ancestors of (1 + a)/2 on a 0-step and (1 - a)/2 on a 1-step.
Rational product_formula_eval(const DyadicMeasureTree& tree, const DyadicPath& path);

// Top-down inverse of the coefficient map. Coefficients of absent nodes must be
// 0 and all values must lie in [-1, 1].
DyadicMeasureTree reconstruct_tree(const std::map<DyadicPath, Rational>& coeffs, const Rational& total,
                                   int maxscale, FeatureOrder order = {}, std::string label = {});

std::set<DyadicPath> support(const DyadicMeasureTree& tree, int scale);

struct HaarFunction {
  DyadicPath node;
};

// +1 below node.0, -1 below node.1, 0 outside the node set.
int haar_value(const HaarFunction& h, const DyadicPath& point);

// [index / denominator, (index + 1) / denominator) with denominator 2^level.
struct DyadicInterval {
  BigInt index;
  BigInt denominator;

  Rational begin() const { return canonical(index); }
  Rational end() const { return canonical(index + 1); }

 private:
  Rational canonical(const BigInt& numerator) const {
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
  }
};

DyadicInterval unit_interval_embedding(const DyadicPath& path);

// a_n, checked against Pr(left | node) - Pr(right | node).
Rational conditional_skew(const DyadicMeasureTree& tree, const DyadicPath& node);

// JSON text: label, maxscale, total, feature_order and path -> {mass, coeff}
// for every stored node, paths in lexicographic order.
std::string write_coefficient_dump(const DyadicMeasureTree& tree);
// Rebuilds the tree from the coefficients and total, then checks the masses.
DyadicMeasureTree read_coefficient_dump(std::string_view json_text);

}  // namespace dyadic
