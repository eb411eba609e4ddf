#include "dyadic/validate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dyadic/complexes.hpp"
#include "dyadic/error.hpp"
#include "dyadic/homology.hpp"
#include "dyadic/ingest.hpp"
#include "dyadic/measure_tree.hpp"

namespace dyadic {

namespace {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream ss;
  ss << "(";
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? "," : "") << v[i];
  ss << ")";
  return ss.str();
}

// Both sides padded with zeros to the longer length.
ValidationItem compare_vectors(std::string name, std::vector<std::int64_t> expected, std::vector<std::int64_t> actual,
                               bool hard, int first_index = 0) {
  ValidationItem item{std::move(name), join(expected), join(actual), true, hard, {}};
  const std::size_t len = std::max(expected.size(), actual.size());
  expected.resize(len, 0);
  actual.resize(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (expected[i] != actual[i]) {
      item.match = false;
      item.diff.push_back("[" + std::to_string(i + static_cast<std::size_t>(first_index)) + "] expected " +
                          std::to_string(expected[i]) + ", got " + std::to_string(actual[i]));
    }
  }
  return item;
}

ValidationItem compare_scalar(std::string name, std::int64_t expected, std::int64_t actual, bool hard) {
  return {std::move(name), std::to_string(expected), std::to_string(actual), expected == actual, hard, {}};
}

std::string top_text(const std::vector<std::pair<Pattern, int>>& rows) {
  std::string out;
  for (const auto& [p, pct] : rows) {
    if (!out.empty()) out += " ";
    out += "{" + format_pattern(p, ',') + "}:" + std::to_string(pct) + "%";
  }
  return out.empty() ? "-" : out;
}

ValidationItem compare_top(std::string name, const json& expected, const FeatureSample& sample, double coverage,
                           bool hard) {
  std::vector<std::pair<Pattern, int>> want, got;
  for (const auto& row : expected) want.emplace_back(row.at(0).get<Pattern>(), row.at(1).get<int>());
  for (const auto& t : top_pattern_report(sample, coverage)) got.emplace_back(t.pattern, t.percent);
  ValidationItem item{std::move(name), top_text(want), top_text(got), want == got, hard, {}};
  const std::size_t len = std::max(want.size(), got.size());
  for (std::size_t i = 0; i < len; ++i) {
    std::string w = i < want.size() ? top_text({want[i]}) : "-";
    std::string g = i < got.size() ? top_text({got[i]}) : "-";
    if (w != g) item.diff.push_back("rank " + std::to_string(i + 1) + ": expected " + w + ", got " + g);
  }
  return item;
}

std::vector<std::int64_t> histogram_bins(const FeatureSample& sample, std::size_t bins) {
  std::vector<std::int64_t> out(bins, 0);
  for (const auto& [k, c] : violation_histogram(sample)) {
    if (k >= 1 && static_cast<std::size_t>(k) <= bins) {
      out[static_cast<std::size_t>(k - 1)] = static_cast<std::int64_t>(c);
    } else if (k > 0) {
      out.resize(static_cast<std::size_t>(k), 0);
      out[static_cast<std::size_t>(k - 1)] = static_cast<std::int64_t>(c);
    }
  }
  return out;
}

std::int64_t never_violated(const FeatureSample& sample) {
  std::vector<bool> hit(static_cast<std::size_t>(sample.n_features()) + 1, false);
  for (const auto& row : sample.rows()) {
    for (int i : row.pattern) hit[static_cast<std::size_t>(i)] = true;
  }
  return std::count(hit.begin() + 1, hit.end(), false);
}

std::vector<std::int64_t> nerve_betti(const DyadicMeasureTree& tree) {
  return betti_numbers(closure(nerve_zero(tree))).betti;
}

}  // namespace

std::size_t ValidationReport::hard_failures() const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](const auto& i) { return i.hard && !i.match; }));
}

std::size_t ValidationReport::soft_mismatches() const {
  return static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](const auto& i) { return !i.hard && !i.match; }));
}

std::string ValidationReport::text() const {
  std::ostringstream out;
  for (const auto& item : items) {
    out << (item.match ? "MATCH    " : "MISMATCH ") << (item.hard ? "[hard] " : "[soft] ") << item.name
        << ": expected " << item.expected << ", got " << item.actual << "\n";
    for (const auto& d : item.diff) out << "                 " << d << "\n";
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  out << "hard failures: " << hard_failures() << ", soft mismatches: " << soft_mismatches() << "\n";
  return out.str();
}

ValidationReport validate_corpus(const std::filesystem::path& dir) {
  ValidationReport report;
  json expected;
  try {
    expected = json::parse(read_file(dir / "expected.json"));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, "expected.json: " + std::string(e.what()));
  }
  const int n = expected.at("n_features").get<int>();

  // Numbered sources with a file; "composite" stands for their union.
  std::map<std::string, FeatureSample> samples;
  std::string composite_key;
  for (const auto& [key, src] : expected.at("sources").items()) {
    if (src.at("file").is_null()) {
      composite_key = key;
      continue;
    }
    const auto file = src.at("file").get<std::string>();
    auto sample = parse_violation_table(read_file(dir / file), n, "source " + key);
    for (const auto& w : sample.warnings()) report.notes.push_back(file + ": " + w);
    samples.emplace(key, std::move(sample));
  }
  std::vector<FeatureSample> parts;
  for (const auto& [key, s] : samples) parts.push_back(s);
  const FeatureSample composite = merge_samples(parts, "composite");
  const FeatureOrder order = order_features(composite);

  auto check_source = [&](const std::string& name, const json& src, const FeatureSample& sample) {
    const bool hard = src.value("hard", false);
    report.items.push_back(compare_scalar(name + " total", src.at("total").get<std::int64_t>(),
                                          static_cast<std::int64_t>(sample.total()), hard));
    const auto hist = src.at("histogram").get<std::vector<std::int64_t>>();
    report.items.push_back(
        compare_vectors(name + " histogram", hist, histogram_bins(sample, hist.size()), hard, 1));
    const auto tree = build_tree(sample, order);
    report.items.push_back(compare_vectors(name + " N0 betti", src.at("betti").get<std::vector<std::int64_t>>(),
                                           nerve_betti(tree), hard));
    if (src.contains("top50")) report.items.push_back(compare_top(name + " top 50%", src["top50"], sample, 0.5, hard));
    if (src.contains("top60")) report.items.push_back(compare_top(name + " top 60%", src["top60"], sample, 0.6, hard));
  };

  for (const auto& [key, src] : expected.at("sources").items()) {
    if (key == composite_key) {
      check_source("composite", src, composite);
    } else {
      check_source("source " + key, src, samples.at(key));
    }
  }

  if (expected.contains("composite")) {
    const auto& c = expected["composite"];
    if (c.contains("distinct_patterns")) {
      report.items.push_back(compare_scalar("composite distinct patterns", c["distinct_patterns"].get<std::int64_t>(),
                                            static_cast<std::int64_t>(composite.pattern_counts().size()), false));
    }
    if (c.contains("never_violated")) {
      report.items.push_back(compare_scalar("composite never-violated features",
                                            c["never_violated"].get<std::int64_t>(), never_violated(composite), false));
    }
    if (c.contains("top50")) report.items.push_back(compare_top("composite top 50%", c["top50"], composite, 0.5, false));
    if (c.contains("top60")) report.items.push_back(compare_top("composite top 60%", c["top60"], composite, 0.6, false));
  }

  if (expected.contains("faces")) {
    for (const auto& [file, betti] : expected["faces"].items()) {
      const auto faces = maximalize(read_face_list(read_file(dir / file)));
      report.items.push_back(compare_vectors(file + " betti", betti.get<std::vector<std::int64_t>>(),
                                             betti_numbers(closure(faces)).betti, true));
    }
  }

  // A transcribed face list against the complex recomputed from its source.
  if (expected.contains("face_sources")) {
    for (const auto& [file, key] : expected["face_sources"].items()) {
      const auto listed = maximalize(read_face_list(read_file(dir / file)));
      const auto computed = nerve_zero(build_tree(samples.at(key.get<std::string>()), order));
      ValidationItem item{file + " vs source " + key.get<std::string>() + " N0",
                          std::to_string(listed.size()) + " faces", std::to_string(computed.size()) + " faces",
                          listed == computed, false, {}};
      for (const auto& f : listed.faces()) {
        if (!std::binary_search(computed.faces().begin(), computed.faces().end(), f)) {
          item.diff.push_back("only listed:   {" + format_face(f) + "}");
        }
      }
      for (const auto& f : computed.faces()) {
        if (!std::binary_search(listed.faces().begin(), listed.faces().end(), f)) {
          item.diff.push_back("only computed: {" + format_face(f) + "}");
        }
      }
      report.items.push_back(std::move(item));
    }
  }
  return report;
}

}  // namespace dyadic
