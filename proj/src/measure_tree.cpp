#include "dyadic/measure_tree.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>

#include "dyadic/error.hpp"

namespace dyadic {

DyadicPath::DyadicPath(std::string_view bits) : bits_(bits) {
  if (bits_.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "dyadic path may only contain '0' and '1': '" + bits_ + "'");
  }
}

DyadicPath DyadicPath::child(int bit) const {
  DyadicPath p = *this;
  p.bits_.push_back(bit ? '1' : '0');
  return p;
}

DyadicPath DyadicPath::parent() const {
  if (bits_.empty()) throw Error(ErrorCode::InvalidArgument, "the root has no parent");
  return prefix(bits_.size() - 1);
}

DyadicPath DyadicPath::prefix(std::size_t length) const {
  DyadicPath p;
  p.bits_ = bits_.substr(0, length);
  return p;
}

bool DyadicPath::is_prefix_of(const DyadicPath& other) const noexcept {
  return bits_.size() <= other.bits_.size() && other.bits_.compare(0, bits_.size(), bits_) == 0;
}

namespace {

Rational coefficient_of(const Rational& left, const Rational& right) {
  Rational parent = left + right;
  if (parent == 0) return 0;
  return Rational((left - right) / parent);
}

}  // namespace

DyadicMeasureTree DyadicMeasureTree::from_leaf_masses(int maxscale, FeatureOrder order,
                                                      const std::map<DyadicPath, Rational>& leaves,
                                                      std::string label) {
  if (maxscale <= 0) throw Error(ErrorCode::InvalidArgument, "maxscale must be positive");
  if (order.perm.empty()) order = FeatureOrder::identity(maxscale);
  order.validate(maxscale);

  DyadicMeasureTree tree;
  tree.maxscale_ = maxscale;
  tree.order_ = std::move(order);
  tree.label_ = std::move(label);

  for (const auto& [path, mass] : leaves) {
    if (static_cast<int>(path.level()) != maxscale) {
      throw Error(ErrorCode::InvalidArgument, "leaf '" + path.str() + "' is not at level " + std::to_string(maxscale));
    }
    if (mass < 0) throw Error(ErrorCode::InvalidArgument, "negative mass at '" + path.str() + "'");
    if (mass == 0) continue;
    for (std::size_t len = 0; len <= path.level(); ++len) {
      tree.nodes_[path.prefix(len)].mass += mass;
    }
  }
  for (auto& [path, data] : tree.nodes_) {
    if (static_cast<int>(path.level()) == maxscale) continue;
    data.coeff = coefficient_of(tree.mass(path.child(0)), tree.mass(path.child(1)));
  }
  tree.total_ = tree.mass(DyadicPath{});
  return tree;
}

Rational DyadicMeasureTree::mass(const DyadicPath& path) const {
  auto it = nodes_.find(path);
  return it == nodes_.end() ? Rational(0) : it->second.mass;
}

Rational DyadicMeasureTree::coeff(const DyadicPath& path) const {
  auto it = nodes_.find(path);
  return it == nodes_.end() ? Rational(0) : it->second.coeff;
}

std::map<DyadicPath, Rational> DyadicMeasureTree::leaf_masses() const {
  std::map<DyadicPath, Rational> out;
  for (const auto& [path, data] : nodes_) {
    if (static_cast<int>(path.level()) == maxscale_) out.emplace(path, data.mass);
  }
  return out;
}

std::map<DyadicPath, Rational> DyadicMeasureTree::coefficients() const {
  std::map<DyadicPath, Rational> out;
  for (const auto& [path, data] : nodes_) out.emplace(path, data.coeff);
  return out;
}

bool operator==(const DyadicMeasureTree& a, const DyadicMeasureTree& b) {
  if (a.maxscale_ != b.maxscale_ || a.total_ != b.total_ || a.nodes_.size() != b.nodes_.size()) return false;
  if (a.order_.perm != b.order_.perm) return false;
  return std::equal(a.nodes_.begin(), a.nodes_.end(), b.nodes_.begin(), [](const auto& x, const auto& y) {
    return x.first == y.first && x.second.mass == y.second.mass && x.second.coeff == y.second.coeff;
  });
}

DyadicPath pattern_path(const Pattern& pattern, const FeatureOrder& order) {
  std::string bits(order.perm.size(), '1');
  for (std::size_t level = 0; level < order.perm.size(); ++level) {
    if (std::binary_search(pattern.begin(), pattern.end(), order.perm[level])) bits[level] = '0';
  }
  return DyadicPath(bits);
}

DyadicMeasureTree build_tree(const FeatureSample& sample, const FeatureOrder& order) {
  order.validate(sample.n_features());
  std::map<DyadicPath, Rational> leaves;
  for (const auto& row : sample.rows()) {
    leaves[pattern_path(row.pattern, order)] += Rational(BigInt(std::to_string(row.count)));
  }
  return DyadicMeasureTree::from_leaf_masses(sample.n_features(), order, leaves, sample.label());
}

Rational product_formula_eval(const DyadicMeasureTree& tree, const DyadicPath& path) {
  if (static_cast<int>(path.level()) > tree.maxscale()) {
    throw Error(ErrorCode::InvalidArgument, "path '" + path.str() + "' is deeper than maxscale " +
                                                std::to_string(tree.maxscale()));
  }
  Rational value = tree.total();
  for (std::size_t i = 0; i < path.level() && value != 0; ++i) {
    const Rational a = tree.coeff(path.prefix(i));
    const int h = path.bit(i) == 0 ? 1 : -1;
    value *= (1 + a * h) / 2;
  }
  return value;
}

DyadicMeasureTree reconstruct_tree(const std::map<DyadicPath, Rational>& coeffs, const Rational& total,
                                   int maxscale, FeatureOrder order, std::string label) {
  if (maxscale <= 0) throw Error(ErrorCode::InvalidArgument, "maxscale must be positive");
  if (total < 0) throw Error(ErrorCode::InvalidArgument, "total mass must be non-negative");
  for (const auto& [path, a] : coeffs) {
    if (a < -1 || a > 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "coefficient " + to_fraction_string(a) + " at '" + path.str() + "' outside [-1, 1]");
    }
    if (static_cast<int>(path.level()) > maxscale) {
      throw Error(ErrorCode::InvalidArgument, "coefficient path '" + path.str() + "' deeper than maxscale");
    }
  }
  auto coeff_at = [&](const DyadicPath& p) {
    auto it = coeffs.find(p);
    return it == coeffs.end() ? Rational(0) : it->second;
  };

  std::map<DyadicPath, Rational> leaves;
  std::map<DyadicPath, Rational> reached;
  std::deque<std::pair<DyadicPath, Rational>> frontier;
  if (total > 0) frontier.emplace_back(DyadicPath{}, total);
  while (!frontier.empty()) {
    auto [path, mass] = std::move(frontier.front());
    frontier.pop_front();
    reached.emplace(path, mass);
    if (static_cast<int>(path.level()) == maxscale) {
      leaves.emplace(path, mass);
      continue;
    }
    const Rational a = coeff_at(path);
    Rational left = mass * (1 + a) / 2;
    Rational right = mass * (1 - a) / 2;
    if (left > 0) frontier.emplace_back(path.child(0), left);
    if (right > 0) frontier.emplace_back(path.child(1), right);
  }
  for (const auto& [path, a] : coeffs) {
    if (a == 0) continue;
    if (!reached.count(path)) {
      throw Error(ErrorCode::InvalidArgument, "nonzero coefficient at zero-mass node '" + path.str() + "'");
    }
    if (static_cast<int>(path.level()) == maxscale) {
      throw Error(ErrorCode::InvalidArgument, "nonzero coefficient at leaf '" + path.str() + "'");
    }
  }
  return DyadicMeasureTree::from_leaf_masses(maxscale, std::move(order), leaves, std::move(label));
}

std::set<DyadicPath> support(const DyadicMeasureTree& tree, int scale) {
  if (scale < 0 || scale > tree.maxscale()) {
    throw Error(ErrorCode::InvalidArgument, "scale " + std::to_string(scale) + " outside [0, " +
                                                std::to_string(tree.maxscale()) + "]");
  }
  std::set<DyadicPath> out;
  for (const auto& [path, data] : tree.nodes()) {
    if (static_cast<int>(path.level()) == scale) out.insert(path);
  }
  return out;
}

int haar_value(const HaarFunction& h, const DyadicPath& point) {
  if (point.level() < h.node.level() + 1) {
    throw Error(ErrorCode::InvalidArgument, "point '" + point.str() + "' is shorter than the Haar support");
  }
  if (!h.node.is_prefix_of(point)) return 0;
  return point.bit(h.node.level()) == 0 ? 1 : -1;
}

DyadicInterval unit_interval_embedding(const DyadicPath& path) {
  DyadicInterval out{0, 1};
  for (std::size_t i = 0; i < path.level(); ++i) {
    out.index = out.index * 2 + path.bit(i);
    out.denominator *= 2;
  }
  return out;
}

Rational conditional_skew(const DyadicMeasureTree& tree, const DyadicPath& node) {
  const Rational mass = tree.mass(node);
  if (mass == 0) throw Error(ErrorCode::EmptyMeasure, "node '" + node.str() + "' has zero mass");
  if (static_cast<int>(node.level()) >= tree.maxscale()) {
    throw Error(ErrorCode::InvalidArgument, "leaf '" + node.str() + "' has no children");
  }
  const Rational left = tree.mass(node.child(0)) / mass;
  const Rational right = tree.mass(node.child(1)) / mass;
  const Rational a = tree.coeff(node);
  if (a != left - right) {
    throw Error(ErrorCode::Inconsistent, "coefficient at '" + node.str() + "' disagrees with child fractions");
  }
  return a;
}

std::string write_coefficient_dump(const DyadicMeasureTree& tree) {
  using nlohmann::json;
  json nodes = json::object();
  for (const auto& [path, data] : tree.nodes()) {
    nodes[path.str()] = {{"coeff", to_fraction_string(data.coeff)}, {"mass", to_fraction_string(data.mass)}};
  }
  json doc = {
      {"label", tree.label()},
      {"maxscale", tree.maxscale()},
      {"total", to_fraction_string(tree.total())},
      {"feature_order", tree.order().perm},
      {"nodes", std::move(nodes)},
  };
  return doc.dump(2) + "\n";
}

DyadicMeasureTree read_coefficient_dump(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
    std::map<DyadicPath, Rational> coeffs;
    std::map<DyadicPath, Rational> masses;
    for (const auto& [key, value] : doc.at("nodes").items()) {
      DyadicPath path(key);
      coeffs.emplace(path, parse_rational(value.at("coeff").get<std::string>()));
      masses.emplace(path, parse_rational(value.at("mass").get<std::string>()));
    }
    FeatureOrder order;
    order.perm = doc.at("feature_order").get<std::vector<int>>();
    order.provenance = "coefficient dump";
    auto tree = reconstruct_tree(coeffs, parse_rational(doc.at("total").get<std::string>()),
                                 doc.at("maxscale").get<int>(), std::move(order), doc.value("label", std::string{}));
    if (tree.nodes().size() != masses.size()) {
      throw Error(ErrorCode::Inconsistent, "dump lists nodes that the coefficients do not reach");
    }
    for (const auto& [path, mass] : masses) {
      if (tree.mass(path) != mass) throw Error(ErrorCode::Inconsistent, "mass mismatch at '" + path.str() + "'");
    }
    return tree;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("coefficient dump: ") + e.what());
  }
}

}  // namespace dyadic
