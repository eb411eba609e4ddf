#include "dyadic/dyadic.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>

#include "dyadic/complexes.hpp"
#include "dyadic/daywheel.hpp"
#include "dyadic/error.hpp"
#include "dyadic/homology.hpp"
#include "dyadic/ingest.hpp"
#include "dyadic/measure_tree.hpp"
#include "dyadic/permute.hpp"
#include "dyadic/tree_measures.hpp"
#include "dyadic/validate.hpp"

struct dy_sample {
  dyadic::FeatureSample value;
};
struct dy_order {
  dyadic::FeatureOrder value;
};
struct dy_tree {
  dyadic::DyadicMeasureTree value;
};
struct dy_faces {
  dyadic::MaximalFaceSet value;
};

namespace {

thread_local std::string last_error;

dy_status to_status(dyadic::ErrorCode code) {
  switch (code) {
    case dyadic::ErrorCode::InvalidArgument: return DY_INVALID_ARGUMENT;
    case dyadic::ErrorCode::Parse: return DY_PARSE;
    case dyadic::ErrorCode::Io: return DY_IO;
    case dyadic::ErrorCode::EmptyMeasure: return DY_EMPTY_MEASURE;
    case dyadic::ErrorCode::LimitExceeded: return DY_LIMIT;
    case dyadic::ErrorCode::Inconsistent: return DY_INCONSISTENT;
  }
  return DY_INTERNAL;
}

template <class F>
dy_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return DY_OK;
  } catch (const dyadic::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return DY_INTERNAL;
}

void require(bool cond, const char* what) {
  if (!cond) throw dyadic::Error(dyadic::ErrorCode::InvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dyadic::Error(dyadic::ErrorCode::Io, std::string("cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<int> width(int n) { return n > 0 ? std::optional<int>(n) : std::nullopt; }

}  // namespace

extern "C" {

const char* dy_last_error(void) { return last_error.c_str(); }

void dy_string_free(char* s) { std::free(s); }

dy_status dy_sample_parse_table(const char* text, int n_features, const char* label, dy_sample** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new dy_sample{dyadic::parse_violation_table(text, width(n_features), label ? label : "")};
  });
}

dy_status dy_sample_parse_vectors(const char* text, const char* label, dy_sample** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new dy_sample{dyadic::parse_feature_vectors(text, label ? label : "")};
  });
}

dy_status dy_sample_load(const char* path, int n_features, dy_sample** out) {
  return guard([&] {
    require(path && out, "null argument");
    const auto text = read_file(path);
    const auto label = std::filesystem::path(path).stem().string();
    *out = new dy_sample{dyadic::parse_violation_table(text, width(n_features), label)};
  });
}

dy_status dy_sample_merge(const dy_sample* const* samples, size_t count, const char* label, dy_sample** out) {
  return guard([&] {
    require(out && (samples || count == 0), "null argument");
    std::vector<dyadic::FeatureSample> parts;
    for (size_t i = 0; i < count; ++i) {
      require(samples[i], "null sample");
      parts.push_back(samples[i]->value);
    }
    *out = new dy_sample{dyadic::merge_samples(parts, label ? label : "")};
  });
}

void dy_sample_free(dy_sample* s) { delete s; }

int dy_sample_n_features(const dy_sample* s) { return s ? s->value.n_features() : 0; }

uint64_t dy_sample_total(const dy_sample* s) { return s ? s->value.total() : 0; }

size_t dy_sample_distinct(const dy_sample* s) { return s ? s->value.rows().size() : 0; }

dy_status dy_sample_warnings(const dy_sample* s, char** out) {
  return guard([&] {
    require(s && out, "null argument");
    std::string text;
    for (const auto& w : s->value.warnings()) text += w + "\n";
    *out = dup(text);
  });
}

dy_status dy_sample_write_table(const dy_sample* s, char** out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = dup(dyadic::write_violation_table(s->value));
  });
}

dy_status dy_sample_write_vectors(const dy_sample* s, char** out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = dup(dyadic::write_feature_vectors(s->value));
  });
}

dy_status dy_sample_histogram_csv(const dy_sample* s, char** out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = dup(dyadic::write_histogram_csv(s->value));
  });
}

dy_status dy_sample_top_csv(const dy_sample* s, double coverage, char** out) {
  return guard([&] {
    require(s && out, "null argument");
    require(coverage > 0 && coverage <= 1, "coverage must lie in (0, 1]");
    *out = dup(dyadic::write_top_pattern_csv(dyadic::top_pattern_report(s->value, coverage)));
  });
}

dy_status dy_order_from_sample(const dy_sample* s, dy_order** out) {
  return guard([&] {
    require(s && out, "null argument");
    *out = new dy_order{dyadic::order_features(s->value)};
  });
}

dy_status dy_order_parse(const char* text, int n_features, dy_order** out) {
  return guard([&] {
    require(text && out, "null argument");
    auto order = dyadic::FeatureOrder::parse(text);
    if (n_features > 0) order.validate(n_features);
    *out = new dy_order{std::move(order)};
  });
}

dy_status dy_order_identity(int n_features, dy_order** out) {
  return guard([&] {
    require(out && n_features >= 0, "bad argument");
    *out = new dy_order{dyadic::FeatureOrder::identity(n_features)};
  });
}

void dy_order_free(dy_order* o) { delete o; }

int dy_order_size(const dy_order* o) { return o ? o->value.size() : 0; }

int dy_order_at(const dy_order* o, int level) {
  if (!o || level < 0 || level >= o->value.size()) return 0;
  return o->value.perm[static_cast<size_t>(level)];
}

dy_status dy_tree_build(const dy_sample* s, const dy_order* order, dy_tree** out) {
  return guard([&] {
    require(s && out, "null argument");
    const auto ord = order ? order->value : dyadic::FeatureOrder::identity(s->value.n_features());
    *out = new dy_tree{dyadic::build_tree(s->value, ord)};
  });
}

dy_status dy_tree_load_dump(const char* json_text, dy_tree** out) {
  return guard([&] {
    require(json_text && out, "null argument");
    *out = new dy_tree{dyadic::read_coefficient_dump(json_text)};
  });
}

void dy_tree_free(dy_tree* t) { delete t; }

int dy_tree_maxscale(const dy_tree* t) { return t ? t->value.maxscale() : 0; }

dy_status dy_tree_dump(const dy_tree* t, char** out) {
  return guard([&] {
    require(t && out, "null argument");
    *out = dup(dyadic::write_coefficient_dump(t->value));
  });
}

dy_status dy_tree_mass(const dy_tree* t, const char* path, char** out) {
  return guard([&] {
    require(t && path && out, "null argument");
    *out = dup(dyadic::to_fraction_string(t->value.mass(dyadic::DyadicPath(path))));
  });
}

dy_status dy_tree_coefficient(const dy_tree* t, const char* path, char** out) {
  return guard([&] {
    require(t && path && out, "null argument");
    *out = dup(dyadic::to_fraction_string(t->value.coeff(dyadic::DyadicPath(path))));
  });
}

dy_status dy_tree_support(const dy_tree* t, int level, char** out) {
  return guard([&] {
    require(t && out, "null argument");
    std::string text;
    for (const auto& p : dyadic::support(t->value, level)) text += p.str() + "\n";
    *out = dup(text);
  });
}

dy_status dy_tree_permute(const dy_tree* t, const char* cycles, dy_tree** out) {
  return guard([&] {
    require(t && cycles && out, "null argument");
    const auto g = dyadic::FeaturePermutation::parse_cycles(cycles, t->value.maxscale());
    *out = new dy_tree{dyadic::recompute_coefficients(t->value, g)};
  });
}

dy_status dy_tree_orbit_average(const dy_tree* t, const char* generators, size_t max_group_size, dy_tree** out) {
  return guard([&] {
    require(t && generators && out, "null argument");
    std::vector<dyadic::FeaturePermutation> gens;
    std::string all(generators), piece;
    std::istringstream in(all);
    while (std::getline(in, piece, ';')) {
      if (piece.find_first_not_of(" \t") == std::string::npos) continue;
      gens.push_back(dyadic::FeaturePermutation::parse_cycles(piece, t->value.maxscale()));
    }
    *out = new dy_tree{dyadic::orbit_average(t->value, gens, max_group_size ? max_group_size : 10080)};
  });
}

dy_status dy_tree_daywheel(const dy_tree* t, int levels, double radius_px, char** out) {
  return guard([&] {
    require(t && out, "null argument");
    dyadic::DaywheelSpec spec;
    spec.levels = levels;
    if (radius_px > 0) spec.radius_px = radius_px;
    *out = dup(dyadic::render_daywheel(t->value, spec));
  });
}

dy_status dy_tree_nerve(const dy_tree* t, dy_complex_kind kind, dy_faces** out) {
  return guard([&] {
    require(t && out, "null argument");
    dyadic::NerveKind k;
    switch (kind) {
      case DY_NERVE_PAIRS: k = dyadic::NerveKind::Pairs; break;
      case DY_NERVE_ZERO: k = dyadic::NerveKind::Zero; break;
      case DY_NERVE_ONE: k = dyadic::NerveKind::One; break;
      default: throw dyadic::Error(dyadic::ErrorCode::InvalidArgument, "unknown complex kind");
    }
    *out = new dy_faces{dyadic::nerve(t->value, k)};
  });
}

dy_status dy_faces_parse(const char* text, dy_faces** out) {
  return guard([&] {
    require(text && out, "null argument");
    *out = new dy_faces{dyadic::maximalize(dyadic::read_face_list(text))};
  });
}

void dy_faces_free(dy_faces* f) { delete f; }

size_t dy_faces_count(const dy_faces* f) { return f ? f->value.size() : 0; }

dy_status dy_faces_write(const dy_faces* f, char** out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = dup(dyadic::write_face_list(f->value.faces()));
  });
}

dy_status dy_faces_betti(const dy_faces* f, int torsion, char** out) {
  return guard([&] {
    require(f && out, "null argument");
    dyadic::HomologyOptions opts;
    opts.torsion = torsion != 0;
    *out = dup(dyadic::write_betti_report(dyadic::betti_numbers(dyadic::closure(f->value), opts)));
  });
}

dy_status dy_faces_betti_vector(const dy_faces* f, int64_t* betti, size_t cap, size_t* len) {
  return guard([&] {
    require(f && len && (betti || cap == 0), "null argument");
    const auto b = dyadic::betti_numbers(dyadic::closure(f->value)).betti;
    *len = b.size();
    for (size_t i = 0; i < b.size() && i < cap; ++i) betti[i] = b[i];
  });
}

dy_status dy_tree_lemma_check(const char* tree_text, int strict_upper, char** report, int* ok) {
  return guard([&] {
    require(tree_text && report && ok, "null argument");
    const auto check = dyadic::check_tree_lemma(dyadic::parse_tree_measure(tree_text), strict_upper != 0);
    *report = dup(check.report);
    *ok = check.ok() ? 1 : 0;
  });
}

dy_status dy_validate_corpus(const char* dir, char** report, size_t* hard_failures) {
  return guard([&] {
    require(dir && report && hard_failures, "null argument");
    const auto r = dyadic::validate_corpus(dir);
    *report = dup(r.text());
    *hard_failures = r.hard_failures();
  });
}

}  // extern "C"
