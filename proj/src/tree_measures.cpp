#include "dyadic/tree_measures.hpp"

#include <sstream>

#include "dyadic/error.hpp"

namespace dyadic {

std::size_t TreeStructuredMeasure::add_root(Rational nu, Rational mu) {
  if (!nodes_.empty()) throw Error(ErrorCode::InvalidArgument, "tree already has a root");
  nodes_.push_back({std::move(nu), std::move(mu), 0, 0, {}});
  return 0;
}

std::size_t TreeStructuredMeasure::add_child(std::size_t parent, Rational nu, Rational mu) {
  if (parent >= nodes_.size()) throw Error(ErrorCode::InvalidArgument, "unknown parent node");
  const std::size_t id = nodes_.size();
  nodes_.push_back({std::move(nu), std::move(mu), parent, nodes_[parent].depth + 1, {}});
  nodes_[parent].children.push_back(id);
  return id;
}

void TreeStructuredMeasure::validate() const {
  if (nodes_.empty()) throw Error(ErrorCode::InvalidArgument, "empty tree");
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const auto& n = nodes_[id];
    if (n.nu <= 0) {
      throw Error(ErrorCode::InvalidArgument, "node " + std::to_string(id) + ": reference measure must be positive");
    }
    if (n.mu < 0) throw Error(ErrorCode::InvalidArgument, "node " + std::to_string(id) + ": negative measure");
    if (n.children.empty()) continue;
    Rational nu_sum = 0, mu_sum = 0;
    for (auto c : n.children) {
      nu_sum += nodes_[c].nu;
      mu_sum += nodes_[c].mu;
    }
    if (nu_sum != n.nu || mu_sum != n.mu) {
      throw Error(ErrorCode::Inconsistent, "node " + std::to_string(id) + ": children do not add up to the parent");
    }
  }
}

TreeStructuredMeasure parse_tree_measure(std::string_view text) {
  TreeStructuredMeasure tree;
  std::vector<std::size_t> stack;  // stack[d] = latest node at depth d
  std::size_t indent_width = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.find('\t') != std::string::npos) throw ParseError(line_no, "use spaces for indentation");
    const std::size_t spaces = line.find_first_not_of(' ');
    if (spaces > 0 && indent_width == 0) indent_width = spaces;
    if (spaces > 0 && spaces % indent_width != 0) throw ParseError(line_no, "inconsistent indentation");
    const std::size_t depth = spaces == 0 ? 0 : spaces / indent_width;

    std::istringstream fields(line);
    std::string nu_text, mu_text, extra;
    if (!(fields >> nu_text >> mu_text) || (fields >> extra)) throw ParseError(line_no, "expected 'nu mu'");
    Rational nu, mu;
    try {
      nu = parse_rational(nu_text);
      mu = parse_rational(mu_text);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }

    if (depth == 0) {
      if (tree.size() != 0) throw ParseError(line_no, "second root");
      stack.assign(1, tree.add_root(nu, mu));
      continue;
    }
    if (tree.size() == 0) throw ParseError(line_no, "indented line before the root");
    if (depth > stack.size()) throw ParseError(line_no, "indentation skips a level");
    stack.resize(depth);
    stack.push_back(tree.add_child(stack[depth - 1], nu, mu));
  }
  if (tree.size() == 0) throw Error(ErrorCode::Parse, "no tree nodes in input");
  return tree;
}

TreeStructuredMeasure uniform_binary_tree(const DyadicMeasureTree& dyadic) {
  TreeStructuredMeasure out;
  struct Item {
    DyadicPath path;
    std::size_t id;
    Rational nu;
  };
  std::vector<Item> stack;
  out.add_root(Rational(1), dyadic.total());
  stack.push_back({DyadicPath{}, 0, Rational(1)});
  while (!stack.empty()) {
    auto item = std::move(stack.back());
    stack.pop_back();
    if (static_cast<int>(item.path.level()) == dyadic.maxscale()) continue;
    const Rational half = item.nu / 2;
    // Push right first so the left child gets the lower id.
    std::vector<Item> kids;
    for (int b = 0; b < 2; ++b) {
      auto child = item.path.child(b);
      kids.push_back({child, out.add_child(item.id, half, dyadic.mass(child)), half});
    }
    stack.push_back(std::move(kids[1]));
    stack.push_back(std::move(kids[0]));
  }
  return out;
}

std::vector<Rational> general_coefficients(const TreeStructuredMeasure& tree) {
  tree.validate();
  std::vector<Rational> a(tree.size(), Rational(0));
  for (std::size_t id = 1; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    const auto& p = tree.node(n.parent);
    if (p.mu == 0) continue;
    a[id] = n.mu * p.nu / (n.nu * p.mu) - 1;
  }
  return a;
}

namespace {

std::vector<std::size_t> root_path(const TreeStructuredMeasure& tree, std::size_t node) {
  std::vector<std::size_t> path;
  for (std::size_t id = node; id != 0; id = tree.node(id).parent) path.push_back(id);
  return path;
}

}  // namespace

Rational nu_path_formula(const TreeStructuredMeasure& tree, std::size_t node) {
  Rational value = tree.node(0).nu;
  for (auto id : root_path(tree, node)) {
    const auto& n = tree.node(id);
    value *= n.nu / tree.node(n.parent).nu;
  }
  return value;
}

Rational general_path_formula(const TreeStructuredMeasure& tree, const std::vector<Rational>& coeffs,
                              std::size_t node) {
  Rational value = tree.node(0).mu;
  for (auto id : root_path(tree, node)) {
    const auto& n = tree.node(id);
    value *= (1 + coeffs.at(id)) * n.nu / tree.node(n.parent).nu;
  }
  if (value != tree.node(node).mu) {
    throw Error(ErrorCode::Inconsistent, "node " + std::to_string(node) + ": path formula gives " +
                                             to_fraction_string(value) + ", stored mu is " +
                                             to_fraction_string(tree.node(node).mu));
  }
  if (nu_path_formula(tree, node) != tree.node(node).nu) {
    throw Error(ErrorCode::Inconsistent, "node " + std::to_string(node) + ": nu path formula mismatch");
  }
  return value;
}

Rational check_orthogonality(const TreeStructuredMeasure& tree, const std::vector<Rational>& coeffs,
                             std::size_t node) {
  if (tree.is_leaf(node)) {
    throw Error(ErrorCode::InvalidArgument, "node " + std::to_string(node) + " is a leaf");
  }
  Rational residual = 0;
  for (auto c : tree.node(node).children) residual += coeffs.at(c) * tree.node(c).nu;
  return residual;
}

CoefficientBounds coefficient_bounds(const TreeStructuredMeasure& tree, const std::vector<Rational>& coeffs,
                                     std::size_t node, bool strict_upper) {
  if (node == 0) throw Error(ErrorCode::InvalidArgument, "the root has no coefficient");
  const auto& n = tree.node(node);
  CoefficientBounds b;
  b.lower = -1;
  b.upper = tree.node(n.parent).nu / n.nu - 1;
  const Rational& a = coeffs.at(node);
  b.lower_ok = a >= b.lower;
  b.upper_ok = strict_upper ? a < b.upper : a <= b.upper;
  return b;
}

LemmaCheck check_tree_lemma(const TreeStructuredMeasure& tree, bool strict_upper) {
  LemmaCheck out;
  const auto a = general_coefficients(tree);
  std::ostringstream report;
  report << "node,parent,depth,nu,mu,coeff,path_formula,orthogonality,bounds\n";
  for (std::size_t id = 0; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    report << id << "," << (id == 0 ? std::string("-") : std::to_string(n.parent)) << "," << n.depth << ","
           << to_fraction_string(n.nu) << "," << to_fraction_string(n.mu) << ","
           << (id == 0 ? std::string("-") : to_fraction_string(a[id])) << ",";
    try {
      general_path_formula(tree, a, id);
      report << "ok,";
    } catch (const Error&) {
      out.path_formula_ok = false;
      report << "FAIL,";
    }
    if (tree.is_leaf(id)) {
      report << "-,";
    } else {
      auto residual = check_orthogonality(tree, a, id);
      if (residual != 0) out.orthogonality_ok = false;
      report << to_fraction_string(residual) << ",";
    }
    if (id == 0) {
      report << "-\n";
    } else {
      auto b = coefficient_bounds(tree, a, id, strict_upper);
      const bool ok = b.lower_ok && b.upper_ok;
      if (!ok) out.bounds_ok = false;
      report << "[" << to_fraction_string(b.lower) << ";" << to_fraction_string(b.upper)
             << (strict_upper ? ")" : "]") << (ok ? " ok" : " FAIL") << "\n";
    }
  }
  report << "path_formula " << (out.path_formula_ok ? "ok" : "FAIL") << "\n";
  report << "orthogonality " << (out.orthogonality_ok ? "ok" : "FAIL") << "\n";
  report << "bounds " << (out.bounds_ok ? "ok" : "FAIL") << "\n";
  out.report = report.str();
  return out;
}

}  // namespace dyadic
