#ifndef DYADIC_DYADIC_H
#define DYADIC_DYADIC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef DYADIC_BUILDING_LIBRARY
#    define DY_API __declspec(dllexport)
#  else
#    define DY_API __declspec(dllimport)
#  endif
#else
#  define DY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dy_status {
  DY_OK = 0,
  DY_INVALID_ARGUMENT = 1,
  DY_PARSE = 2,
  DY_IO = 3,
  DY_EMPTY_MEASURE = 4,
  DY_LIMIT = 5,
  DY_INCONSISTENT = 6,
  DY_INTERNAL = 99
} dy_status;

typedef struct dy_sample dy_sample;
typedef struct dy_order dy_order;
typedef struct dy_tree dy_tree;
typedef struct dy_faces dy_faces;

typedef enum dy_complex_kind { DY_NERVE_PAIRS = 0, DY_NERVE_ZERO = 1, DY_NERVE_ONE = 2 } dy_complex_kind;

/* Message of the last failing call on this thread; "" after success. */
DY_API const char* dy_last_error(void);
/* Frees any char* returned through an out-parameter. */
DY_API void dy_string_free(char* s);

/* Samples.  n_features <= 0 infers the width from the data. */
DY_API dy_status dy_sample_parse_table(const char* text, int n_features, const char* label, dy_sample** out);
DY_API dy_status dy_sample_parse_vectors(const char* text, const char* label, dy_sample** out);
DY_API dy_status dy_sample_load(const char* path, int n_features, dy_sample** out);
DY_API dy_status dy_sample_merge(const dy_sample* const* samples, size_t count, const char* label, dy_sample** out);
DY_API void dy_sample_free(dy_sample* s);
DY_API int dy_sample_n_features(const dy_sample* s);
DY_API uint64_t dy_sample_total(const dy_sample* s);
DY_API size_t dy_sample_distinct(const dy_sample* s);
/* Parse warnings joined by newlines. */
DY_API dy_status dy_sample_warnings(const dy_sample* s, char** out);
DY_API dy_status dy_sample_write_table(const dy_sample* s, char** out);
DY_API dy_status dy_sample_write_vectors(const dy_sample* s, char** out);
DY_API dy_status dy_sample_histogram_csv(const dy_sample* s, char** out);
DY_API dy_status dy_sample_top_csv(const dy_sample* s, double coverage, char** out);

/* Feature orders. */
DY_API dy_status dy_order_from_sample(const dy_sample* s, dy_order** out);
DY_API dy_status dy_order_parse(const char* text, int n_features, dy_order** out);
DY_API dy_status dy_order_identity(int n_features, dy_order** out);
DY_API void dy_order_free(dy_order* o);
DY_API int dy_order_size(const dy_order* o);
/* Original feature index at tree level `level` (0-based). */
DY_API int dy_order_at(const dy_order* o, int level);

/* Measure trees.  order may be NULL for the identity order. */
DY_API dy_status dy_tree_build(const dy_sample* s, const dy_order* order, dy_tree** out);
DY_API dy_status dy_tree_load_dump(const char* json_text, dy_tree** out);
DY_API void dy_tree_free(dy_tree* t);
DY_API int dy_tree_maxscale(const dy_tree* t);
DY_API dy_status dy_tree_dump(const dy_tree* t, char** out);
/* Exact values as "p/q". path is a {0,1} string, "" for the root. */
DY_API dy_status dy_tree_mass(const dy_tree* t, const char* path, char** out);
DY_API dy_status dy_tree_coefficient(const dy_tree* t, const char* path, char** out);
/* Newline-separated support paths at the given level. */
DY_API dy_status dy_tree_support(const dy_tree* t, int level, char** out);
/* Cycle notation, e.g. "(1 2)(5 7)". */
DY_API dy_status dy_tree_permute(const dy_tree* t, const char* cycles, dy_tree** out);
/* Generators separated by ';'. max_group_size 0 picks the default. */
DY_API dy_status dy_tree_orbit_average(const dy_tree* t, const char* generators, size_t max_group_size,
                                       dy_tree** out);
DY_API dy_status dy_tree_daywheel(const dy_tree* t, int levels, double radius_px, char** out);
DY_API dy_status dy_tree_nerve(const dy_tree* t, dy_complex_kind kind, dy_faces** out);

/* Maximal face sets. */
DY_API dy_status dy_faces_parse(const char* text, dy_faces** out);
DY_API void dy_faces_free(dy_faces* f);
DY_API size_t dy_faces_count(const dy_faces* f);
DY_API dy_status dy_faces_write(const dy_faces* f, char** out);
/* `dim betti` report, plus torsion lines when requested. */
DY_API dy_status dy_faces_betti(const dy_faces* f, int torsion, char** out);
/* Copies up to cap Betti numbers; *len receives the full length. */
DY_API dy_status dy_faces_betti_vector(const dy_faces* f, int64_t* betti, size_t cap, size_t* len);

/* General tree measures: CSV report, *ok set to 1 when all checks hold. */
DY_API dy_status dy_tree_lemma_check(const char* tree_text, int strict_upper, char** report, int* ok);

/* Corpus cross-check: report text and the number of hard failures. */
DY_API dy_status dy_validate_corpus(const char* dir, char** report, size_t* hard_failures);

#ifdef __cplusplus
}
#endif

#endif
