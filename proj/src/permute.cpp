#include "dyadic/permute.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <set>

#include "dyadic/error.hpp"

namespace dyadic {

FeaturePermutation::FeaturePermutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  std::vector<bool> hit(mapping_.size() + 1, false);
  for (int v : mapping_) {
    if (v < 1 || v > size() || hit[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::InvalidArgument, "not a bijection on [1, " + std::to_string(size()) + "]");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
}

FeaturePermutation FeaturePermutation::identity(int n) {
  std::vector<int> m(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(m.begin(), m.end(), 1);
  return FeaturePermutation(std::move(m));
}

FeaturePermutation FeaturePermutation::parse_cycles(std::string_view text, int n) {
  std::vector<int> m(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(m.begin(), m.end(), 1);
  std::vector<bool> used(m.size() + 1, false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(') throw Error(ErrorCode::Parse, "expected '(' in cycle notation: '" + std::string(text) + "'");
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i >= text.size()) throw Error(ErrorCode::Parse, "unterminated cycle in '" + std::string(text) + "'");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw Error(ErrorCode::Parse, "bad character in cycle notation: '" + std::string(text) + "'");
      int v = std::stoi(std::string(text.substr(start, i - start)));
      if (v < 1 || v > n) {
        throw Error(ErrorCode::InvalidArgument, "cycle element " + std::to_string(v) + " outside [1, " +
                                                    std::to_string(n) + "]");
      }
      if (used[static_cast<std::size_t>(v)]) {
        throw Error(ErrorCode::InvalidArgument, "element " + std::to_string(v) + " appears in two cycles");
      }
      used[static_cast<std::size_t>(v)] = true;
      cycle.push_back(v);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      m[static_cast<std::size_t>(cycle[k] - 1)] = cycle[(k + 1) % cycle.size()];
    }
    skip_space();
  }
  return FeaturePermutation(std::move(m));
}

std::vector<int> FeaturePermutation::moved() const {
  std::vector<int> out;
  for (int i = 1; i <= size(); ++i) {
    if ((*this)(i) != i) out.push_back(i);
  }
  return out;
}

bool FeaturePermutation::is_identity() const { return moved().empty(); }

FeaturePermutation FeaturePermutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (int i = 1; i <= size(); ++i) inv[static_cast<std::size_t>((*this)(i) - 1)] = i;
  return FeaturePermutation(std::move(inv));
}

FeaturePermutation operator*(const FeaturePermutation& a, const FeaturePermutation& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "composing permutations of different size");
  std::vector<int> m(a.mapping_.size());
  for (int i = 1; i <= a.size(); ++i) m[static_cast<std::size_t>(i - 1)] = a(b(i));
  return FeaturePermutation(std::move(m));
}

std::string FeaturePermutation::to_cycles() const {
  std::string out;
  std::vector<bool> seen(mapping_.size() + 1, false);
  for (int i = 1; i <= size(); ++i) {
    if (seen[static_cast<std::size_t>(i)] || (*this)(i) == i) continue;
    out += "(";
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
      seen[static_cast<std::size_t>(j)] = true;
      if (out.back() != '(') out += " ";
      out += std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

DyadicPath permute_path(const DyadicPath& path, const FeaturePermutation& g) {
  if (static_cast<int>(path.level()) != g.size()) {
    throw Error(ErrorCode::InvalidArgument, "path length " + std::to_string(path.level()) +
                                                " does not match permutation size " + std::to_string(g.size()));
  }
  std::string bits(path.level(), '1');
  for (int i = 1; i <= g.size(); ++i) {
    bits[static_cast<std::size_t>(g(i) - 1)] = path.str()[static_cast<std::size_t>(i - 1)];
  }
  return DyadicPath(bits);
}

std::map<DyadicPath, Rational> permute_paths(const std::map<DyadicPath, Rational>& leaves,
                                             const FeaturePermutation& g) {
  std::map<DyadicPath, Rational> out;
  for (const auto& [path, mass] : leaves) out.emplace(permute_path(path, g), mass);
  return out;
}

namespace {

// Bits at positions 1..length of the image of a length-`length` prefix.
// Only meaningful when every moved position lies within the prefix.
DyadicPath permute_prefix(const DyadicPath& prefix, const FeaturePermutation& g) {
  std::string bits = prefix.str();
  for (int i = 1; i <= static_cast<int>(prefix.level()); ++i) {
    bits[static_cast<std::size_t>(g(i) - 1)] = prefix.str()[static_cast<std::size_t>(i - 1)];
  }
  return DyadicPath(bits);
}

}  // namespace

DyadicMeasureTree recompute_coefficients(const DyadicMeasureTree& tree, const FeaturePermutation& g) {
  if (g.size() != tree.maxscale()) {
    throw Error(ErrorCode::InvalidArgument, "permutation size " + std::to_string(g.size()) +
                                                " does not match maxscale " + std::to_string(tree.maxscale()));
  }
  FeatureOrder order;
  order.perm.resize(tree.order().perm.size());
  for (int i = 1; i <= g.size(); ++i) {
    order.perm[static_cast<std::size_t>(g(i) - 1)] = tree.order().perm[static_cast<std::size_t>(i - 1)];
  }
  order.provenance = tree.order().provenance + " permuted by " + g.to_cycles();
  auto out = DyadicMeasureTree::from_leaf_masses(tree.maxscale(), std::move(order),
                                                 permute_paths(tree.leaf_masses(), g), tree.label());

  const auto moved = g.moved();
  if (moved.empty()) return out;
  const std::size_t first = static_cast<std::size_t>(moved.front());
  const std::size_t last = static_cast<std::size_t>(moved.back());

  // A node at level l splits on position l + 1, so levels below first - 1 do
  // not see the permutation at all.
  auto fail = [](const std::string& what) { throw Error(ErrorCode::Inconsistent, "recompute: " + what); };
  std::size_t before = 0, after = 0;
  for (const auto& [path, data] : tree.nodes()) {
    if (path.level() + 1 < first) {
      ++before;
      auto it = out.nodes().find(path);
      if (it == out.nodes().end() || it->second.coeff != data.coeff || it->second.mass != data.mass) {
        fail("coefficient above the first moved level changed at '" + path.str() + "'");
      }
    } else if (path.level() >= last) {
      ++after;
      auto it = out.nodes().find(permute_prefix(path, g));
      if (it == out.nodes().end() || it->second.coeff != data.coeff || it->second.mass != data.mass) {
        fail("subtree below the last moved level not carried over at '" + path.str() + "'");
      }
    }
  }
  for (const auto& [path, data] : out.nodes()) {
    if (path.level() + 1 < first) --before;
    if (path.level() >= last) --after;
  }
  if (before != 0 || after != 0) fail("node counts differ outside the moved levels");
  return out;
}

std::vector<FeaturePermutation> generate_group(const std::vector<FeaturePermutation>& generators, int n,
                                               std::size_t max_size) {
  std::set<FeaturePermutation> seen;
  std::deque<FeaturePermutation> frontier;
  auto e = FeaturePermutation::identity(n);
  seen.insert(e);
  frontier.push_back(e);
  for (const auto& gen : generators) {
    if (gen.size() != n) throw Error(ErrorCode::InvalidArgument, "generator size does not match maxscale");
  }
  while (!frontier.empty()) {
    auto cur = frontier.front();
    frontier.pop_front();
    for (const auto& gen : generators) {
      auto next = gen * cur;
      if (seen.insert(next).second) {
        if (seen.size() > max_size) {
          throw Error(ErrorCode::LimitExceeded, "generated group exceeds " + std::to_string(max_size) + " elements");
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

DyadicMeasureTree orbit_average(const DyadicMeasureTree& tree, const std::vector<FeaturePermutation>& generators,
                                std::size_t max_group_size) {
  const auto group = generate_group(generators, tree.maxscale(), max_group_size);
  const auto leaves = tree.leaf_masses();
  std::map<DyadicPath, Rational> averaged;
  for (const auto& [leaf, mass] : leaves) {
    if (averaged.count(leaf)) continue;
    std::set<DyadicPath> orbit;
    for (const auto& g : group) orbit.insert(permute_path(leaf, g));
    Rational sum = 0;
    for (const auto& p : orbit) {
      if (auto it = leaves.find(p); it != leaves.end()) sum += it->second;
    }
    const Rational mean = sum / static_cast<long>(orbit.size());
    for (const auto& p : orbit) averaged[p] = mean;
  }
  return DyadicMeasureTree::from_leaf_masses(tree.maxscale(), tree.order(), averaged, tree.label());
}

}  // namespace dyadic
