#pragma once

// Random models shared by the unit and acceptance tests. Everything is driven
// by an explicit std::mt19937 so failures reproduce from the seed alone.

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dyadic/complexes.hpp"
#include "dyadic/ingest.hpp"
#include "dyadic/measure_tree.hpp"
#include "dyadic/permute.hpp"
#include "dyadic/tree_measures.hpp"

namespace testgen {

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 2 features: ({1,2},3), ({1},1), ({2},2), ({},2).
inline dyadic::FeatureSample toy_sample() {
  return dyadic::FeatureSample(2, {{{1, 2}, 3}, {{1}, 1}, {{2}, 2}, {{}, 2}}, "toy");
}

// Up to max_features features and max_items items over random patterns.
inline dyadic::FeatureSample random_sample(std::mt19937& rng, int max_features = 12, int max_items = 64) {
  const int n = uniform(rng, 1, max_features);
  const int items = uniform(rng, 1, max_items);
  const int density = uniform(rng, 1, 9);  // tenths of a chance to violate
  std::map<dyadic::Pattern, std::uint64_t> counts;
  for (int k = 0; k < items; ++k) {
    dyadic::Pattern p;
    for (int i = 1; i <= n; ++i) {
      if (uniform(rng, 0, 9) < density) p.push_back(i);
    }
    ++counts[p];
  }
  std::vector<dyadic::SampleRow> rows;
  for (auto& [p, c] : counts) rows.push_back({p, c});
  std::shuffle(rows.begin(), rows.end(), rng);
  return dyadic::FeatureSample(n, std::move(rows), "random");
}

inline dyadic::FeatureOrder random_order(std::mt19937& rng, int n) {
  auto order = dyadic::FeatureOrder::identity(n);
  std::shuffle(order.perm.begin(), order.perm.end(), rng);
  order.provenance = "random";
  return order;
}

inline dyadic::FeaturePermutation random_permutation(std::mt19937& rng, int n) {
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 1);
  std::shuffle(m.begin(), m.end(), rng);
  return dyadic::FeaturePermutation(std::move(m));
}

// Random faces on vertices 1..vertices, each of dimension at most max_dim.
inline std::vector<dyadic::Face> random_faces(std::mt19937& rng, int vertices, int faces, int max_dim) {
  std::vector<dyadic::Face> out;
  for (int k = 0; k < faces; ++k) {
    const int size = uniform(rng, 1, std::min(max_dim + 1, vertices));
    std::set<int> f;
    while (static_cast<int>(f.size()) < size) f.insert(uniform(rng, 1, vertices));
    out.emplace_back(f.begin(), f.end());
  }
  return out;
}

// Random rooted tree, depth <= max_depth and branching <= max_branching, with
// positive nu and non-negative mu that are additive over children. Some mu
// values are zeroed to exercise the zero-mass branches.
inline dyadic::TreeStructuredMeasure random_tree_measure(std::mt19937& rng, int max_depth = 5,
                                                         int max_branching = 4) {
  using dyadic::Rational;
  struct Proto {
    std::size_t parent;
    int depth;
    std::vector<std::size_t> kids;
    Rational nu, mu;
  };
  std::vector<Proto> proto{{0, 0, {}, 0, 0}};
  for (std::size_t i = 0; i < proto.size(); ++i) {
    if (proto[i].depth >= max_depth) continue;
    const int kids = proto.size() == 1 ? uniform(rng, 1, max_branching) : uniform(rng, 0, max_branching);
    if (kids == 1 && uniform(rng, 0, 1) == 0) continue;
    for (int k = 0; k < kids; ++k) {
      proto[i].kids.push_back(proto.size());
      proto.push_back({i, proto[i].depth + 1, {}, 0, 0});
    }
  }
  // Leaves first: random positive nu, random non-negative mu; sums upward.
  for (std::size_t i = proto.size(); i-- > 0;) {
    if (proto[i].kids.empty()) {
      proto[i].nu = Rational(uniform(rng, 1, 20), uniform(rng, 1, 7));
      proto[i].mu = uniform(rng, 0, 3) == 0 ? Rational(0) : Rational(uniform(rng, 1, 30), uniform(rng, 1, 5));
    } else {
      for (auto c : proto[i].kids) {
        proto[i].nu += proto[c].nu;
        proto[i].mu += proto[c].mu;
      }
    }
    proto[i].nu.canonicalize();
    proto[i].mu.canonicalize();
  }
  dyadic::TreeStructuredMeasure tree;
  std::vector<std::size_t> id(proto.size());
  // Pre-order insertion.
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const auto i = stack.back();
    stack.pop_back();
    id[i] = i == 0 ? tree.add_root(proto[i].nu, proto[i].mu) : tree.add_child(id[proto[i].parent], proto[i].nu, proto[i].mu);
    for (auto it = proto[i].kids.rbegin(); it != proto[i].kids.rend(); ++it) stack.push_back(*it);
  }
  return tree;
}

}  // namespace testgen
