#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dyadic/error.hpp"
#include "dyadic/validate.hpp"
#include "generators.hpp"

using namespace dyadic;
namespace fs = std::filesystem;

namespace {

const ValidationItem& item(const ValidationReport& r, const std::string& name) {
  for (const auto& i : r.items) {
    if (i.name == name) return i;
  }
  FAIL("no item " << name);
  throw 0;
}

}  // namespace

TEST_CASE("shipped corpus") {
  auto r = validate_corpus(DYADIC_CORPUS_DIR);
  CHECK(r.hard_failures() == 0);
  CHECK(item(r, "composite total").match);
  CHECK(item(r, "composite total").actual == "3924");
  CHECK(item(r, "source 2 histogram").match);
  CHECK(item(r, "source 2 N0 betti").match);
  CHECK(item(r, "source 3 N0 betti").match);
  CHECK(item(r, "source 4 N0 betti").match);
  CHECK(item(r, "source 5 N0 betti").match);
  // known transcription issues stay visible
  CHECK_FALSE(item(r, "composite distinct patterns").match);
  CHECK(item(r, "composite distinct patterns").actual == "275");
  CHECK_FALSE(item(r, "source2_faces.txt vs source 2 N0").match);
  CHECK(item(r, "source2_faces.txt vs source 2 N0").diff.size() == 2);
  CHECK(r.text().find("MISMATCH [soft] composite N0 betti") != std::string::npos);
}

TEST_CASE("a deleted row is a hard failure") {
  const fs::path tmp = fs::temp_directory_path() / "dyadic_validate_test";
  fs::remove_all(tmp);
  fs::copy(DYADIC_CORPUS_DIR, tmp);
  std::string text = testgen::slurp((tmp / "source2.csv").string());
  const auto pos = text.find("\n1,");  // first single-count row
  REQUIRE(pos != std::string::npos);
  text.erase(pos, text.find('\n', pos + 1) - pos);
  std::ofstream((tmp / "source2.csv").string(), std::ios::binary) << text;
  auto r = validate_corpus(tmp);
  CHECK(r.hard_failures() > 0);
  CHECK_FALSE(item(r, "source 2 total").match);
  CHECK(item(r, "source 2 total").actual == "530");
  fs::remove_all(tmp);
}

TEST_CASE("missing corpus") {
  CHECK_THROWS_AS(validate_corpus("/nonexistent/corpus"), Error);
}
