#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dyadic/measure_tree.hpp"

namespace dyadic {

// Strictly ascending, nonempty vertex list.
using Face = std::vector<int>;

// Antichain of faces under inclusion, kept in lexicographic order. The
// complex it generates is the union of the faces' power sets.
class MaximalFaceSet {
 public:
  MaximalFaceSet() = default;
  // Throws if a face is empty, unsorted, or contained in another.
  explicit MaximalFaceSet(std::vector<Face> antichain);

  const std::vector<Face>& faces() const noexcept { return faces_; }
  bool empty() const noexcept { return faces_.empty(); }
  std::size_t size() const noexcept { return faces_.size(); }

  friend bool operator==(const MaximalFaceSet&, const MaximalFaceSet&) = default;

 private:
  std::vector<Face> faces_;
};

MaximalFaceSet maximalize(std::vector<Face> faces);

enum class NerveKind {
  Pairs,  // N(mu): vertices (i, b), encoded 2i - 1 + b
  Zero,   // N0(mu): indices with value 0 on a common support leaf
  One,    // N1(mu): indices with value 1
};

constexpr int encode_pair_vertex(int feature, int bit) { return 2 * feature - 1 + bit; }
constexpr int pair_vertex_feature(int vertex) { return (vertex + 1) / 2; }
constexpr int pair_vertex_bit(int vertex) { return (vertex + 1) % 2; }

// One candidate face per support leaf, labelled by original feature index,
// in leaf order. Empty candidates are dropped.
std::vector<Face> nerve_candidates(const DyadicMeasureTree& tree, NerveKind kind);

// Throws EmptyMeasure when the tree has zero total mass. A measure whose only
// candidates are empty yields an empty set.
MaximalFaceSet nerve(const DyadicMeasureTree& tree, NerveKind kind);
inline MaximalFaceSet nerve_pairs(const DyadicMeasureTree& tree) { return nerve(tree, NerveKind::Pairs); }
inline MaximalFaceSet nerve_zero(const DyadicMeasureTree& tree) { return nerve(tree, NerveKind::Zero); }
inline MaximalFaceSet nerve_one(const DyadicMeasureTree& tree) { return nerve(tree, NerveKind::One); }

// One face per line, whitespace-separated vertices; '#' comments. Each face
// is sorted; repeated vertices are an error.
std::vector<Face> read_face_list(std::string_view text);
// Lexicographically sorted, ascending space-separated vertices.
std::string write_face_list(std::vector<Face> faces);

std::string format_face(const Face& face);

}  // namespace dyadic
