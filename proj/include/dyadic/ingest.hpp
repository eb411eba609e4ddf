#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dyadic {

// Ascending 1-based indices of the features whose value is 0 ("violated").
using Pattern = std::vector<int>;

struct SampleRow {
  Pattern pattern;
  std::uint64_t count = 0;
};

// Multiset of binary feature vectors, stored as distinct patterns with
// multiplicities. Immutable once constructed.
class FeatureSample {
 public:
  FeatureSample() = default;
  // Validates index range, pattern uniqueness and positive counts. Patterns
  // are normalized to ascending order; row order is kept.
  FeatureSample(int n_features, std::vector<SampleRow> rows, std::string label = {},
                std::vector<std::string> warnings = {});

  int n_features() const noexcept { return n_features_; }
  const std::vector<SampleRow>& rows() const noexcept { return rows_; }
  const std::string& label() const noexcept { return label_; }
  // Parse-time notes, e.g. binary-ID/index-list conflicts.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  std::uint64_t total() const noexcept;
  bool empty() const noexcept { return rows_.empty(); }
  std::map<Pattern, std::uint64_t> pattern_counts() const;

 private:
  int n_features_ = 0;
  std::vector<SampleRow> rows_;
  std::string label_;
  std::vector<std::string> warnings_;
};

// Processing order of the features: perm[k] is the original index of the
// feature that splits tree level k (so it is the (k+1)-th binary digit).
struct FeatureOrder {
  std::vector<int> perm;
  std::string provenance;

  static FeatureOrder identity(int n_features);
  // Whitespace- or comma-separated list of indices.
  static FeatureOrder parse(std::string_view text, std::string provenance = "explicit");

  int size() const noexcept { return static_cast<int>(perm.size()); }
  // Throws unless perm is a permutation of [1, n].
  void validate(int n_features) const;
};

// `count,idx;idx;...[,binary]` lines; '#' comments. When n_features is not
// given it is the largest index or binary-ID length seen.
FeatureSample parse_violation_table(std::string_view text, std::optional<int> n_features = std::nullopt,
                                    std::string label = {});

// One {0,1} string per item; identical lines are aggregated.
FeatureSample parse_feature_vectors(std::string_view text, std::string label = {});

// Descending total violation count, ties by ascending index.
FeatureOrder order_features(const FeatureSample& reference);

FeatureSample merge_samples(std::span<const FeatureSample> samples, std::string label = {});

// Pattern cardinality -> total count. Only non-empty bins are present.
std::map<int, std::uint64_t> violation_histogram(const FeatureSample& sample);

struct TopPattern {
  Pattern pattern;
  std::uint64_t count = 0;
  int percent = 0;
};

// Shortest prefix of the count-ranked patterns covering `coverage` of the
// total. Equal counts are ranked by pattern.
std::vector<TopPattern> top_pattern_report(const FeatureSample& sample, double coverage);

std::string format_pattern(const Pattern& pattern, char separator = ';');

// `count,pattern,binary` rows in sample order.
std::string write_violation_table(const FeatureSample& sample);
// One {0,1} line per item (expands multiplicities).
std::string write_feature_vectors(const FeatureSample& sample);
std::string write_histogram_csv(const FeatureSample& sample);
std::string write_top_pattern_csv(const std::vector<TopPattern>& report);

}  // namespace dyadic
