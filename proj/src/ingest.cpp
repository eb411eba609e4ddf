#include "dyadic/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "dyadic/error.hpp"

namespace dyadic {

namespace {

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    fn(line_no, text.substr(start, end - start));
    start = end + 1;
  }
}

std::optional<std::uint64_t> parse_count(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<int> parse_index(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

FeatureSample::FeatureSample(int n_features, std::vector<SampleRow> rows, std::string label,
                             std::vector<std::string> warnings)
    : n_features_(n_features), rows_(std::move(rows)), label_(std::move(label)), warnings_(std::move(warnings)) {
  if (n_features_ <= 0) throw Error(ErrorCode::InvalidArgument, "n_features must be positive");
  std::set<Pattern> seen;
  for (auto& row : rows_) {
    std::sort(row.pattern.begin(), row.pattern.end());
    if (std::adjacent_find(row.pattern.begin(), row.pattern.end()) != row.pattern.end()) {
      throw Error(ErrorCode::InvalidArgument, "pattern {" + format_pattern(row.pattern, ',') + "} repeats an index");
    }
    for (int idx : row.pattern) {
      if (idx < 1 || idx > n_features_) {
        throw Error(ErrorCode::InvalidArgument,
                    "feature index " + std::to_string(idx) + " outside [1, " + std::to_string(n_features_) + "]");
      }
    }
    if (row.count == 0) throw Error(ErrorCode::InvalidArgument, "row counts must be positive");
    if (!seen.insert(row.pattern).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate pattern {" + format_pattern(row.pattern, ',') + "}");
    }
  }
}

std::uint64_t FeatureSample::total() const noexcept {
  return std::accumulate(rows_.begin(), rows_.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const SampleRow& r) { return acc + r.count; });
}

std::map<Pattern, std::uint64_t> FeatureSample::pattern_counts() const {
  std::map<Pattern, std::uint64_t> out;
  for (const auto& row : rows_) out[row.pattern] += row.count;
  return out;
}

FeatureOrder FeatureOrder::identity(int n_features) {
  FeatureOrder order;
  order.perm.resize(static_cast<std::size_t>(std::max(n_features, 0)));
  std::iota(order.perm.begin(), order.perm.end(), 1);
  order.provenance = "identity";
  return order;
}

FeatureOrder FeatureOrder::parse(std::string_view text, std::string provenance) {
  FeatureOrder order;
  order.provenance = std::move(provenance);
  std::string token;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream words(line);
    while (words >> token) {
      auto idx = parse_index(token);
      if (!idx) throw Error(ErrorCode::Parse, "bad feature index '" + token + "' in order");
      order.perm.push_back(*idx);
    }
  }
  if (order.perm.empty()) throw Error(ErrorCode::Parse, "empty feature order");
  order.validate(order.size());
  return order;
}

void FeatureOrder::validate(int n_features) const {
  if (size() != n_features) {
    throw Error(ErrorCode::InvalidArgument, "feature order has " + std::to_string(size()) + " entries, expected " +
                                                std::to_string(n_features));
  }
  std::vector<bool> hit(static_cast<std::size_t>(n_features) + 1, false);
  for (int idx : perm) {
    if (idx < 1 || idx > n_features || hit[static_cast<std::size_t>(idx)]) {
      throw Error(ErrorCode::InvalidArgument, "feature order is not a permutation of [1, " +
                                                  std::to_string(n_features) + "]");
    }
    hit[static_cast<std::size_t>(idx)] = true;
  }
}

FeatureSample parse_violation_table(std::string_view text, std::optional<int> n_features, std::string label) {
  struct RawRow {
    std::size_t line;
    SampleRow row;
    std::string binary;
  };
  std::vector<RawRow> raw;
  int inferred = 0;

  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    line = trim(line);
    if (line.empty() || line.front() == '#') return;
    auto fields = split(line, ',');
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(line_no, "expected 'count,violated[,binary]'");
    }
    auto count = parse_count(fields[0]);
    if (!count || *count == 0) {
      throw ParseError(line_no, "count must be a positive integer, got '" + std::string(trim(fields[0])) + "'");
    }
    RawRow r{line_no, {{}, *count}, {}};
    auto list = trim(fields[1]);
    if (!list.empty()) {
      for (auto tok : split(list, ';')) {
        auto idx = parse_index(tok);
        if (!idx || *idx < 1) throw ParseError(line_no, "bad constraint index '" + std::string(trim(tok)) + "'");
        r.row.pattern.push_back(*idx);
        inferred = std::max(inferred, *idx);
      }
    }
    std::sort(r.row.pattern.begin(), r.row.pattern.end());
    if (std::adjacent_find(r.row.pattern.begin(), r.row.pattern.end()) != r.row.pattern.end()) {
      throw ParseError(line_no, "repeated constraint index");
    }
    if (fields.size() == 3) {
      r.binary = std::string(trim(fields[2]));
      if (!n_features) inferred = std::max(inferred, static_cast<int>(r.binary.size()));
    }
    raw.push_back(std::move(r));
  });

  const int n = n_features ? *n_features : inferred;
  if (n <= 0) throw Error(ErrorCode::Parse, "violation table has no rows");

  std::vector<std::string> warnings;
  std::set<Pattern> seen;
  std::vector<SampleRow> rows;
  rows.reserve(raw.size());
  for (auto& r : raw) {
    for (int idx : r.row.pattern) {
      if (idx > n) {
        throw ParseError(r.line, "constraint index " + std::to_string(idx) + " exceeds " + std::to_string(n));
      }
    }
    if (!seen.insert(r.row.pattern).second) {
      throw ParseError(r.line, "duplicate pattern {" + format_pattern(r.row.pattern, ',') + "}");
    }
    if (!r.binary.empty()) {
      bool well_formed = static_cast<int>(r.binary.size()) == n &&
                         r.binary.find_first_not_of("01") == std::string::npos;
      Pattern from_binary;
      if (well_formed) {
        for (int i = 0; i < n; ++i) {
          if (r.binary[static_cast<std::size_t>(i)] == '0') from_binary.push_back(i + 1);
        }
      }
      if (!well_formed || from_binary != r.row.pattern) {
        warnings.push_back("line " + std::to_string(r.line) + ": binary ID '" + r.binary +
                           "' disagrees with index list {" + format_pattern(r.row.pattern, ',') +
                           "}; using the index list");
      }
    }
    rows.push_back(std::move(r.row));
  }
  return FeatureSample(n, std::move(rows), std::move(label), std::move(warnings));
}

FeatureSample parse_feature_vectors(std::string_view text, std::string label) {
  int width = -1;
  std::map<Pattern, std::uint64_t> counts;
  std::vector<Pattern> first_seen;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    line = trim(line);
    if (line.empty() || line.front() == '#') return;
    if (line.find_first_not_of("01") != std::string_view::npos) {
      throw ParseError(line_no, "feature vectors may only contain '0' and '1'");
    }
    if (width < 0) {
      width = static_cast<int>(line.size());
    } else if (width != static_cast<int>(line.size())) {
      throw ParseError(line_no, "expected " + std::to_string(width) + " features, got " + std::to_string(line.size()));
    }
    Pattern p;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '0') p.push_back(static_cast<int>(i) + 1);
    }
    if (counts[p]++ == 0) first_seen.push_back(p);
  });
  if (width <= 0) throw Error(ErrorCode::Parse, "no feature vectors in input");

  std::vector<SampleRow> rows;
  rows.reserve(first_seen.size());
  for (auto& p : first_seen) rows.push_back({p, counts[p]});
  return FeatureSample(width, std::move(rows), std::move(label));
}

FeatureOrder order_features(const FeatureSample& reference) {
  if (reference.empty()) throw Error(ErrorCode::InvalidArgument, "cannot order features from an empty sample");
  const int n = reference.n_features();
  std::vector<std::uint64_t> violations(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& row : reference.rows()) {
    for (int idx : row.pattern) violations[static_cast<std::size_t>(idx)] += row.count;
  }
  FeatureOrder order = FeatureOrder::identity(n);
  std::stable_sort(order.perm.begin(), order.perm.end(), [&](int a, int b) {
    return violations[static_cast<std::size_t>(a)] > violations[static_cast<std::size_t>(b)];
  });
  order.provenance = "violation counts of " + (reference.label().empty() ? std::string("reference") : reference.label());
  return order;
}

FeatureSample merge_samples(std::span<const FeatureSample> samples, std::string label) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to merge");
  // Samples without rows take no part in the width check.
  int n = samples.front().n_features();
  for (const auto& s : samples) {
    if (!s.empty()) {
      n = s.n_features();
      break;
    }
  }
  std::map<Pattern, std::uint64_t> counts;
  std::vector<Pattern> first_seen;
  std::vector<std::string> warnings;
  for (const auto& s : samples) {
    if (s.n_features() != n && !s.empty()) {
      throw Error(ErrorCode::InvalidArgument, "cannot merge samples with " + std::to_string(n) + " and " +
                                                  std::to_string(s.n_features()) + " features");
    }
    for (const auto& row : s.rows()) {
      auto& c = counts[row.pattern];
      if (c == 0) first_seen.push_back(row.pattern);
      c += row.count;
    }
    warnings.insert(warnings.end(), s.warnings().begin(), s.warnings().end());
  }
  std::vector<SampleRow> rows;
  rows.reserve(first_seen.size());
  for (auto& p : first_seen) rows.push_back({p, counts[p]});
  return FeatureSample(n, std::move(rows), std::move(label), std::move(warnings));
}

std::map<int, std::uint64_t> violation_histogram(const FeatureSample& sample) {
  std::map<int, std::uint64_t> bins;
  for (const auto& row : sample.rows()) bins[static_cast<int>(row.pattern.size())] += row.count;
  return bins;
}

std::vector<TopPattern> top_pattern_report(const FeatureSample& sample, double coverage) {
  if (!(coverage > 0.0 && coverage <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "coverage must lie in (0, 1]");
  }
  std::vector<SampleRow> ranked = sample.rows();
  std::sort(ranked.begin(), ranked.end(), [](const SampleRow& a, const SampleRow& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.pattern < b.pattern;
  });
  const std::uint64_t total = sample.total();
  const double target = coverage * static_cast<double>(total);
  std::vector<TopPattern> out;
  std::uint64_t cumulative = 0;
  for (const auto& row : ranked) {
    if (!out.empty() && static_cast<double>(cumulative) >= target) break;
    cumulative += row.count;
    // round-half-up of 100 * count / total
    int percent = static_cast<int>((200 * row.count + total) / (2 * total));
    out.push_back({row.pattern, row.count, percent});
  }
  return out;
}

std::string format_pattern(const Pattern& pattern, char separator) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i) out += separator;
    out += std::to_string(pattern[i]);
  }
  return out;
}

std::string write_violation_table(const FeatureSample& sample) {
  std::string out;
  for (const auto& row : sample.rows()) {
    std::string binary(static_cast<std::size_t>(sample.n_features()), '1');
    for (int idx : row.pattern) binary[static_cast<std::size_t>(idx - 1)] = '0';
    out += std::to_string(row.count) + "," + format_pattern(row.pattern) + "," + binary + "\n";
  }
  return out;
}

std::string write_feature_vectors(const FeatureSample& sample) {
  std::string out;
  for (const auto& row : sample.rows()) {
    std::string line(static_cast<std::size_t>(sample.n_features()), '1');
    for (int idx : row.pattern) line[static_cast<std::size_t>(idx - 1)] = '0';
    line += '\n';
    for (std::uint64_t i = 0; i < row.count; ++i) out += line;
  }
  return out;
}

std::string write_histogram_csv(const FeatureSample& sample) {
  auto bins = violation_histogram(sample);
  std::string out = "violations,count\n";
  if (bins.empty()) return out;
  const int first = bins.begin()->first == 0 ? 0 : 1;
  for (int k = first; k <= bins.rbegin()->first; ++k) {
    auto it = bins.find(k);
    out += std::to_string(k) + "," + std::to_string(it == bins.end() ? 0 : it->second) + "\n";
  }
  out += "total," + std::to_string(sample.total()) + "\n";
  return out;
}

std::string write_top_pattern_csv(const std::vector<TopPattern>& report) {
  std::string out = "pattern,count,percent\n";
  for (const auto& t : report) {
    out += format_pattern(t.pattern) + "," + std::to_string(t.count) + "," + std::to_string(t.percent) + "\n";
  }
  return out;
}

}  // namespace dyadic
