#include "dyadic/homology.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <set>

#include "dyadic/error.hpp"

namespace dyadic {

const std::vector<Face>& SimplicialComplex::faces(int d) const {
  static const std::vector<Face> none;
  if (d < 0 || d > dim()) return none;
  return faces_by_dim_[static_cast<std::size_t>(d)];
}

std::size_t SimplicialComplex::face_count() const noexcept {
  std::size_t n = 0;
  for (const auto& bucket : faces_by_dim_) n += bucket.size();
  return n;
}

std::size_t SimplicialComplex::index_of(int d, const Face& face) const {
  const auto& bucket = faces(d);
  auto it = std::lower_bound(bucket.begin(), bucket.end(), face);
  if (it == bucket.end() || *it != face) {
    throw Error(ErrorCode::InvalidArgument, "face {" + format_face(face) + "} not in complex");
  }
  return static_cast<std::size_t>(it - bucket.begin());
}

bool SimplicialComplex::contains(const Face& face) const {
  if (face.empty()) return false;
  const auto& bucket = faces(static_cast<int>(face.size()) - 1);
  return std::binary_search(bucket.begin(), bucket.end(), face);
}

SimplicialComplex closure(const MaximalFaceSet& maximal) {
  SimplicialComplex out;
  std::size_t top = 0;
  for (const auto& f : maximal.faces()) top = std::max(top, f.size());
  out.faces_by_dim_.resize(top);
  for (const auto& f : maximal.faces()) {
    if (f.size() >= 63) throw Error(ErrorCode::LimitExceeded, "face too large to enumerate its closure");
    const std::uint64_t subsets = (std::uint64_t{1} << f.size()) - 1;
    for (std::uint64_t mask = 1; mask <= subsets; ++mask) {
      Face sub;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (mask >> i & 1u) sub.push_back(f[i]);
      }
      out.faces_by_dim_[sub.size() - 1].push_back(std::move(sub));
    }
  }
  for (auto& bucket : out.faces_by_dim_) {
    std::sort(bucket.begin(), bucket.end());
    bucket.erase(std::unique(bucket.begin(), bucket.end()), bucket.end());
  }
  return out;
}

int BoundaryMatrix::at(std::size_t row, std::size_t col) const {
  for (const auto& [r, v] : columns.at(col)) {
    if (r == row) return v;
  }
  return 0;
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int d) {
  if (d < 1 || d > complex.dim()) {
    throw Error(ErrorCode::InvalidArgument, "boundary dimension " + std::to_string(d) + " outside [1, " +
                                                std::to_string(complex.dim()) + "]");
  }
  BoundaryMatrix m;
  m.dim = d;
  m.rows = complex.faces(d - 1).size();
  const auto& faces = complex.faces(d);
  m.columns.reserve(faces.size());
  for (const auto& f : faces) {
    std::vector<std::pair<std::size_t, int>> column;
    column.reserve(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
      Face sub;
      sub.reserve(f.size() - 1);
      for (std::size_t j = 0; j < f.size(); ++j) {
        if (j != k) sub.push_back(f[j]);
      }
      column.emplace_back(complex.index_of(d - 1, sub), k % 2 == 0 ? 1 : -1);
    }
    std::sort(column.begin(), column.end());
    m.columns.push_back(std::move(column));
  }
  return m;
}

namespace {

using SparseColumn = std::vector<std::pair<std::size_t, BigInt>>;

// a*x - b*y, entries sorted by row, zeros dropped.
SparseColumn combine(const BigInt& a, const SparseColumn& x, const BigInt& b, const SparseColumn& y) {
  SparseColumn out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      BigInt v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

void remove_content(SparseColumn& column) {
  BigInt g = 0;
  for (const auto& [r, v] : column) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& [r, v] : column) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

}  // namespace

std::size_t matrix_rank(const BoundaryMatrix& m) {
  // Column echelon form keyed by the lowest nonzero row. Each elimination step
  // is an integer combination divided by the column content, so entries stay
  // integral and small.
  std::map<std::size_t, SparseColumn> pivots;
  for (const auto& raw : m.columns) {
    SparseColumn v;
    v.reserve(raw.size());
    for (const auto& [r, x] : raw) v.emplace_back(r, BigInt(x));
    while (!v.empty()) {
      auto it = pivots.find(v.back().first);
      if (it == pivots.end()) break;
      const SparseColumn& p = it->second;
      BigInt g;
      mpz_gcd(g.get_mpz_t(), p.back().second.get_mpz_t(), v.back().second.get_mpz_t());
      BigInt a = p.back().second / g;
      BigInt b = v.back().second / g;
      v = combine(a, v, b, p);
      remove_content(v);
    }
    if (!v.empty()) {
      const std::size_t low = v.back().first;
      pivots.emplace(low, std::move(v));
    }
  }
  return pivots.size();
}

std::vector<BigInt> smith_invariant_factors(const BoundaryMatrix& m) {
  // Sparse diagonalization by unimodular row and column operations.
  const std::size_t n_rows = m.rows;
  const std::size_t n_cols = m.cols();
  std::vector<std::map<std::size_t, BigInt>> rows(n_rows);
  std::vector<std::set<std::size_t>> col_rows(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    for (const auto& [r, v] : m.columns[c]) {
      rows[r].emplace(c, BigInt(v));
      col_rows[c].insert(r);
    }
  }
  std::set<std::size_t> active_rows;
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (!rows[r].empty()) active_rows.insert(r);
  }

  auto set_entry = [&](std::size_t r, std::size_t c, BigInt value) {
    if (value == 0) {
      rows[r].erase(c);
      col_rows[c].erase(r);
    } else {
      rows[r][c] = std::move(value);
      col_rows[c].insert(r);
    }
  };
  // row_t -= q * row_s
  auto row_op = [&](std::size_t t, std::size_t s, const BigInt& q) {
    std::vector<std::pair<std::size_t, BigInt>> src(rows[s].begin(), rows[s].end());
    for (const auto& [c, v] : src) {
      auto it = rows[t].find(c);
      BigInt cur = it == rows[t].end() ? BigInt(0) : it->second;
      set_entry(t, c, cur - q * v);
    }
    if (rows[t].empty()) active_rows.erase(t);
  };
  // col_t -= q * col_s
  auto col_op = [&](std::size_t t, std::size_t s, const BigInt& q) {
    std::vector<std::size_t> src(col_rows[s].begin(), col_rows[s].end());
    for (std::size_t r : src) {
      const BigInt v = rows[r].at(s);
      auto it = rows[r].find(t);
      BigInt cur = it == rows[r].end() ? BigInt(0) : it->second;
      set_entry(r, t, cur - q * v);
      if (rows[r].empty()) active_rows.erase(r);
    }
  };

  std::vector<BigInt> diagonal;
  while (!active_rows.empty()) {
    // Pivot: smallest absolute value, then fewest fill-in candidates.
    std::size_t pr = 0, pc = 0;
    BigInt best_abs = -1;
    std::size_t best_cost = 0;
    for (std::size_t r : active_rows) {
      for (const auto& [c, v] : rows[r]) {
        BigInt a = abs(v);
        std::size_t cost = (rows[r].size() - 1) * (col_rows[c].size() - 1);
        if (best_abs < 0 || a < best_abs || (a == best_abs && cost < best_cost)) {
          best_abs = a;
          best_cost = cost;
          pr = r;
          pc = c;
        }
      }
      if (best_abs == 1 && best_cost == 0) break;
    }

    // Clear the pivot column and row; a nonzero remainder becomes the new,
    // strictly smaller pivot.
    bool done = false;
    while (!done) {
      done = true;
      const BigInt p = rows[pr].at(pc);
      std::vector<std::size_t> others;
      for (std::size_t r : col_rows[pc]) {
        if (r != pr) others.push_back(r);
      }
      for (std::size_t r : others) {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r].at(pc).get_mpz_t(), p.get_mpz_t());
        row_op(r, pr, q);
        if (auto it = rows[r].find(pc); it != rows[r].end()) {
          pr = r;
          done = false;
          break;
        }
      }
      if (!done) continue;
      std::vector<std::size_t> other_cols;
      for (const auto& [c, v] : rows[pr]) {
        if (c != pc) other_cols.push_back(c);
      }
      for (std::size_t c : other_cols) {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), rows[pr].at(c).get_mpz_t(), p.get_mpz_t());
        col_op(c, pc, q);
        if (auto it = rows[pr].find(c); it != rows[pr].end()) {
          pc = c;
          done = false;
          break;
        }
      }
    }
    diagonal.push_back(abs(rows[pr].at(pc)));
    set_entry(pr, pc, 0);
    active_rows.erase(pr);
  }

  // Normalize the diagonal into a divisibility chain.
  std::vector<BigInt> factors;
  std::size_t units = 0;
  for (auto& d : diagonal) {
    if (d == 1) {
      ++units;
    } else {
      factors.push_back(d);
    }
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      BigInt g, l;
      mpz_gcd(g.get_mpz_t(), factors[i].get_mpz_t(), factors[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), factors[i].get_mpz_t(), factors[j].get_mpz_t());
      factors[i] = g;
      factors[j] = l;
    }
  }
  std::vector<BigInt> out(units, BigInt(1));
  for (auto& f : factors) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// ranks[d] = rank of the d-th boundary map; ranks[0] = ranks[dim + 1] = 0.
template <class RankFn>
std::vector<std::size_t> boundary_ranks(const SimplicialComplex& complex, bool parallel, RankFn rank) {
  const int top = complex.dim();
  std::vector<std::size_t> ranks(static_cast<std::size_t>(std::max(top, 0)) + 2, 0);
  if (top < 1) return ranks;
  if (parallel && top > 1) {
    std::vector<std::future<std::size_t>> jobs;
    for (int d = 1; d <= top; ++d) {
      jobs.push_back(std::async(std::launch::async, [&complex, d, &rank] { return rank(boundary_matrix(complex, d)); }));
    }
    for (int d = 1; d <= top; ++d) ranks[static_cast<std::size_t>(d)] = jobs[static_cast<std::size_t>(d - 1)].get();
  } else {
    for (int d = 1; d <= top; ++d) ranks[static_cast<std::size_t>(d)] = rank(boundary_matrix(complex, d));
  }
  return ranks;
}

BettiVector betti_from_ranks(const SimplicialComplex& complex, const std::vector<std::size_t>& ranks) {
  BettiVector out;
  for (int d = 0; d <= complex.dim(); ++d) {
    const auto n = static_cast<std::int64_t>(complex.faces(d).size());
    out.betti.push_back(n - static_cast<std::int64_t>(ranks[static_cast<std::size_t>(d)]) -
                        static_cast<std::int64_t>(ranks[static_cast<std::size_t>(d) + 1]));
  }
  return out;
}

}  // namespace

BettiVector betti_numbers(const SimplicialComplex& complex, HomologyOptions options) {
  auto ranks = boundary_ranks(complex, options.parallel, [](const BoundaryMatrix& m) { return matrix_rank(m); });
  BettiVector out = betti_from_ranks(complex, ranks);
  if (options.torsion) {
    std::vector<std::vector<BigInt>> torsion(out.betti.size());
    for (int d = 0; d < complex.dim(); ++d) {
      for (auto& f : smith_invariant_factors(boundary_matrix(complex, d + 1))) {
        if (f > 1) torsion[static_cast<std::size_t>(d)].push_back(f);
      }
    }
    out.torsion = std::move(torsion);
  }
  return out;
}

BettiVector betti_numbers_snf(const SimplicialComplex& complex) {
  std::vector<std::vector<BigInt>> factors(static_cast<std::size_t>(std::max(complex.dim(), 0)) + 2);
  auto ranks = boundary_ranks(complex, false, [&factors](const BoundaryMatrix& m) {
    factors[static_cast<std::size_t>(m.dim)] = smith_invariant_factors(m);
    return factors[static_cast<std::size_t>(m.dim)].size();
  });
  BettiVector out = betti_from_ranks(complex, ranks);
  std::vector<std::vector<BigInt>> torsion(out.betti.size());
  for (std::size_t d = 0; d < torsion.size(); ++d) {
    for (auto& f : factors[d + 1]) {
      if (f > 1) torsion[d].push_back(f);
    }
  }
  out.torsion = std::move(torsion);
  return out;
}

std::size_t connected_components(const SimplicialComplex& complex) {
  const auto& vertices = complex.faces(0);
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = vertices.size();
  for (const auto& edge : complex.faces(1)) {
    auto a = find(complex.index_of(0, {edge[0]}));
    auto b = find(complex.index_of(0, {edge[1]}));
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

std::string write_betti_report(const BettiVector& betti) {
  std::string out;
  for (std::size_t d = 0; d < betti.betti.size(); ++d) {
    out += std::to_string(d) + " " + std::to_string(betti.betti[d]) + "\n";
  }
  if (betti.torsion) {
    for (std::size_t d = 0; d < betti.torsion->size(); ++d) {
      const auto& t = (*betti.torsion)[d];
      if (t.empty()) continue;
      out += "torsion " + std::to_string(d) + " ";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += t[i].get_str();
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace dyadic
