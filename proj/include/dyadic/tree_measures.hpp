#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/measure_tree.hpp"
#include "dyadic/rational.hpp"

namespace dyadic {

struct TreeNode {
  Rational nu;  // reference measure, strictly positive
  Rational mu;  // measure being represented, non-negative
  std::size_t parent = 0;
  std::size_t depth = 0;
  std::vector<std::size_t> children;
};

// Finite rooted tree of arbitrary branching carrying a reference measure nu
// and a measure mu on the node sets. Node 0 is the root; nodes are stored in
// pre-order.
class TreeStructuredMeasure {
 public:
  TreeStructuredMeasure() = default;

  std::size_t add_root(Rational nu, Rational mu);
  std::size_t add_child(std::size_t parent, Rational nu, Rational mu);

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool is_leaf(std::size_t id) const { return nodes_.at(id).children.empty(); }

  // Throws on non-positive nu, negative mu, or a parent whose nu or mu is not
  // the sum over its children.
  void validate() const;

 private:
  std::vector<TreeNode> nodes_;
};

// One node per line as `nu mu`; depth is the leading-space count divided by
// the indent width of the first indented line. '#' starts a comment.
TreeStructuredMeasure parse_tree_measure(std::string_view text);

// Uniform-nu binary tree (each child gets half its parent's nu) with the
// masses of a dyadic tree. Zero-mass children are kept so nu stays positive.
TreeStructuredMeasure uniform_binary_tree(const DyadicMeasureTree& tree);

// a_n per node (root entry 0): mu(n) = (1 + a_n) nu(n)/nu(parent) mu(parent),
// and 0 when mu(parent) = 0. Validates the tree first.
std::vector<Rational> general_coefficients(const TreeStructuredMeasure& tree);

// nu(X) times the conditional nu ratios along the root path.
Rational nu_path_formula(const TreeStructuredMeasure& tree, std::size_t node);
// mu(X) times (1 + a_p) nu(p)/nu(parent p) along the root path. Throws
// Inconsistent if either path formula misses the stored value.
Rational general_path_formula(const TreeStructuredMeasure& tree, const std::vector<Rational>& coeffs,
                              std::size_t node);

// Sum over children c of a_c nu(c); zero for a valid coefficient set.
Rational check_orthogonality(const TreeStructuredMeasure& tree, const std::vector<Rational>& coeffs,
                             std::size_t node);

struct CoefficientBounds {
  Rational lower;  // always -1
  Rational upper;  // nu(parent)/nu(node) - 1
  bool lower_ok = false;
  bool upper_ok = false;
};

// The upper bound is attained when a child carries all of its parent's mass;
// `strict_upper` demands a < upper instead.
CoefficientBounds coefficient_bounds(const TreeStructuredMeasure& tree, const std::vector<Rational>& coeffs,
                                     std::size_t node, bool strict_upper = false);

struct LemmaCheck {
  std::string report;
  bool path_formula_ok = true;
  bool orthogonality_ok = true;
  bool bounds_ok = true;

  bool ok() const noexcept { return path_formula_ok && orthogonality_ok && bounds_ok; }
};

// Per-node coefficients with all three checks, as text.
LemmaCheck check_tree_lemma(const TreeStructuredMeasure& tree, bool strict_upper = false);

}  // namespace dyadic
