#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dyadic {

struct ValidationItem {
  std::string name;
  std::string expected;
  std::string actual;
  bool match = false;
  // Hard items decide the exit status; soft items are reported only.
  bool hard = false;
  // Per-position differences when the item does not match.
  std::vector<std::string> diff;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  std::vector<std::string> notes;

  std::size_t hard_failures() const;
  std::size_t soft_mismatches() const;
  std::string text() const;
};

// Cross-checks the per-source violation tables of a corpus directory against
// its expected.json: totals, histograms, distinct and never-violated counts,
// top-pattern coverage and N0 betti numbers, plus the listed face files.
ValidationReport validate_corpus(const std::filesystem::path& dir);

}  // namespace dyadic
