#include "dyadic/complexes.hpp"

#include <algorithm>
#include <sstream>

#include "dyadic/error.hpp"

namespace dyadic {

MaximalFaceSet::MaximalFaceSet(std::vector<Face> antichain) : faces_(std::move(antichain)) {
  for (const auto& f : faces_) {
    if (f.empty()) throw Error(ErrorCode::InvalidArgument, "faces must be nonempty");
    if (std::adjacent_find(f.begin(), f.end(), std::greater_equal<>()) != f.end()) {
      throw Error(ErrorCode::InvalidArgument, "face {" + format_face(f) + "} is not strictly ascending");
    }
  }
  std::sort(faces_.begin(), faces_.end());
  for (std::size_t i = 0; i < faces_.size(); ++i) {
    for (std::size_t j = 0; j < faces_.size(); ++j) {
      if (i != j && std::includes(faces_[j].begin(), faces_[j].end(), faces_[i].begin(), faces_[i].end())) {
        throw Error(ErrorCode::InvalidArgument,
                    "face {" + format_face(faces_[i]) + "} is contained in {" + format_face(faces_[j]) + "}");
      }
    }
  }
}

MaximalFaceSet maximalize(std::vector<Face> faces) {
  for (auto& f : faces) std::sort(f.begin(), f.end());
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  // Larger faces first so every kept face is checked against all its possible
  // supersets.
  std::stable_sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) { return a.size() > b.size(); });
  std::vector<Face> kept;
  for (auto& f : faces) {
    if (f.empty()) continue;
    bool covered = std::any_of(kept.begin(), kept.end(), [&](const Face& k) {
      return std::includes(k.begin(), k.end(), f.begin(), f.end());
    });
    if (!covered) kept.push_back(std::move(f));
  }
  return MaximalFaceSet(std::move(kept));
}

std::vector<Face> nerve_candidates(const DyadicMeasureTree& tree, NerveKind kind) {
  const auto& perm = tree.order().perm;
  std::vector<Face> out;
  for (const auto& [leaf, mass] : tree.leaf_masses()) {
    Face face;
    for (std::size_t level = 0; level < leaf.level(); ++level) {
      const int feature = perm[level];
      const int b = leaf.bit(level);
      switch (kind) {
        case NerveKind::Pairs:
          face.push_back(encode_pair_vertex(feature, b));
          break;
        case NerveKind::Zero:
          if (b == 0) face.push_back(feature);
          break;
        case NerveKind::One:
          if (b == 1) face.push_back(feature);
          break;
      }
    }
    if (face.empty()) continue;
    std::sort(face.begin(), face.end());
    out.push_back(std::move(face));
  }
  return out;
}

MaximalFaceSet nerve(const DyadicMeasureTree& tree, NerveKind kind) {
  if (tree.total() == 0) throw Error(ErrorCode::EmptyMeasure, "measure has zero total mass");
  return maximalize(nerve_candidates(tree, kind));
}

std::vector<Face> read_face_list(std::string_view text) {
  std::vector<Face> faces;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    Face face;
    std::string token;
    while (words >> token) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) throw ParseError(line_no, "bad vertex '" + token + "'");
      face.push_back(v);
    }
    if (face.empty()) continue;
    std::sort(face.begin(), face.end());
    if (std::adjacent_find(face.begin(), face.end()) != face.end()) {
      throw ParseError(line_no, "repeated vertex in face");
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

std::string format_face(const Face& face) {
  std::string out;
  for (std::size_t i = 0; i < face.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(face[i]);
  }
  return out;
}

std::string write_face_list(std::vector<Face> faces) {
  std::sort(faces.begin(), faces.end());
  std::string out;
  for (const auto& f : faces) out += format_face(f) + "\n";
  return out;
}

}  // namespace dyadic
