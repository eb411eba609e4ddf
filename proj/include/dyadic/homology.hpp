#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyadic/complexes.hpp"
#include "dyadic/rational.hpp"

namespace dyadic {

// Closure of a set of maximal faces, bucketed by dimension. Faces within a
// dimension are sorted lexicographically, which fixes matrix row and column
// order.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // -1 for the empty complex.
  int dim() const noexcept { return static_cast<int>(faces_by_dim_.size()) - 1; }
  const std::vector<Face>& faces(int d) const;
  std::size_t face_count() const noexcept;
  // Position of a d-face in faces(d); throws if absent.
  std::size_t index_of(int d, const Face& face) const;
  bool contains(const Face& face) const;

  friend SimplicialComplex closure(const MaximalFaceSet& maximal);

 private:
  std::vector<std::vector<Face>> faces_by_dim_;
};

SimplicialComplex closure(const MaximalFaceSet& maximal);

// Sparse integer matrix of the d-th boundary map: rows are (d-1)-faces,
// columns d-faces. The subface omitting the k-th smallest vertex gets (-1)^k.
struct BoundaryMatrix {
  int dim = 0;
  std::size_t rows = 0;
  std::vector<std::vector<std::pair<std::size_t, int>>> columns;

  std::size_t cols() const noexcept { return columns.size(); }
  int at(std::size_t row, std::size_t col) const;
};

BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int d);

// Exact rank over Q by fraction-free integer column elimination.
std::size_t matrix_rank(const BoundaryMatrix& m);

// Nonzero invariant factors of the Smith normal form, ascending and forming a
// divisibility chain. Their count is the rank.
std::vector<BigInt> smith_invariant_factors(const BoundaryMatrix& m);

struct BettiVector {
  std::vector<std::int64_t> betti;
  // torsion[d]: invariant factors > 1 of H_d, when requested.
  std::optional<std::vector<std::vector<BigInt>>> torsion;
};

struct HomologyOptions {
  bool torsion = false;
  // Compute per-dimension ranks on separate threads.
  bool parallel = true;
};

BettiVector betti_numbers(const SimplicialComplex& complex, HomologyOptions options = {});
// Same numbers with every rank taken from the Smith normal form.
BettiVector betti_numbers_snf(const SimplicialComplex& complex);

std::size_t connected_components(const SimplicialComplex& complex);

// `dim betti` lines, then `torsion dim f1,f2,...` for non-trivial torsion.
std::string write_betti_report(const BettiVector& betti);

}  // namespace dyadic
