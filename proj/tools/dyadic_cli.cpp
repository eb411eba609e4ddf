// Command-line front end. Everything goes through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "dyadic/dyadic.h"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;

// Carries the exit code out of a failing step.
struct Failure {
  int code;
};

int exit_code(dy_status s) {
  switch (s) {
    case DY_OK: return kOk;
    case DY_INVALID_ARGUMENT:
    case DY_IO: return kUsage;
    default: return kData;
  }
}

void check(dy_status s) {
  if (s == DY_OK) return;
  std::cerr << "dyadic: " << dy_last_error() << "\n";
  throw Failure{exit_code(s)};
}

[[noreturn]] void usage(const std::string& msg) {
  std::cerr << "dyadic: " << msg << "\n";
  throw Failure{kUsage};
}

struct SampleDel {
  void operator()(dy_sample* p) const { dy_sample_free(p); }
};
struct OrderDel {
  void operator()(dy_order* p) const { dy_order_free(p); }
};
struct TreeDel {
  void operator()(dy_tree* p) const { dy_tree_free(p); }
};
struct FacesDel {
  void operator()(dy_faces* p) const { dy_faces_free(p); }
};
using Sample = std::unique_ptr<dy_sample, SampleDel>;
using Order = std::unique_ptr<dy_order, OrderDel>;
using Tree = std::unique_ptr<dy_tree, TreeDel>;
using Faces = std::unique_ptr<dy_faces, FacesDel>;

std::string take(char* s) {
  std::string out(s ? s : "");
  dy_string_free(s);
  return out;
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) usage("cannot open " + path);
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) usage("cannot write " + path);
  out << text;
}

// Input and ordering options shared by the tree-based commands.
struct InputOptions {
  std::string format = "table";
  int features = 0;
  std::string order_file;
  std::string order_from;
};

void add_input_options(CLI::App* cmd, InputOptions& o, bool with_order) {
  cmd->add_option("--format", o.format, "input format")
      ->check(CLI::IsMember({"table", "vectors", "dump"}))
      ->capture_default_str();
  cmd->add_option("--features", o.features, "number of features (default: inferred)");
  if (with_order) {
    auto* f = cmd->add_option("--order-file", o.order_file, "feature processing order, one index per entry");
    auto* r = cmd->add_option("--order-from", o.order_from, "derive the order from this reference sample");
    f->excludes(r);
  }
}

Sample load_sample(const std::string& path, const InputOptions& o) {
  const std::string text = read_input(path);
  const std::string label = std::filesystem::path(path).stem().string();
  dy_sample* s = nullptr;
  if (o.format == "vectors") {
    check(dy_sample_parse_vectors(text.c_str(), label.c_str(), &s));
  } else if (o.format == "table") {
    check(dy_sample_parse_table(text.c_str(), o.features, label.c_str(), &s));
  } else {
    usage("--format dump is not a sample format");
  }
  Sample out(s);
  char* warnings = nullptr;
  check(dy_sample_warnings(s, &warnings));
  std::cerr << take(warnings);
  if (o.features > 0 && dy_sample_n_features(s) != o.features) {
    usage("sample has " + std::to_string(dy_sample_n_features(s)) + " features, --features says " +
          std::to_string(o.features));
  }
  return out;
}

Tree load_tree(const std::string& path, const InputOptions& o) {
  dy_tree* t = nullptr;
  if (o.format == "dump") {
    if (!o.order_file.empty() || !o.order_from.empty()) usage("a coefficient dump already fixes the order");
    check(dy_tree_load_dump(read_input(path).c_str(), &t));
    return Tree(t);
  }
  Sample sample = load_sample(path, o);
  const int n = dy_sample_n_features(sample.get());
  dy_order* ord = nullptr;
  if (!o.order_file.empty()) {
    check(dy_order_parse(read_input(o.order_file).c_str(), n, &ord));
  } else if (!o.order_from.empty()) {
    InputOptions ref = o;
    ref.features = n;
    Sample reference = load_sample(o.order_from, ref);
    check(dy_order_from_sample(reference.get(), &ord));
  } else {
    check(dy_order_from_sample(sample.get(), &ord));
  }
  Order order(ord);
  if (dy_order_size(ord) != n) usage("feature order length does not match the sample");
  check(dy_tree_build(sample.get(), ord, &t));
  return Tree(t);
}

std::string dump(const Tree& t) {
  char* out = nullptr;
  check(dy_tree_dump(t.get(), &out));
  return take(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic measure trees, nerve complexes and their homology."};
  app.require_subcommand(1, 1);
  std::string output;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse a sample and write it back normalized");
  InputOptions ingest_in;
  std::string ingest_path, ingest_to = "table";
  ingest->add_option("input", ingest_path, "violation table or feature vectors ('-' for stdin)")->required();
  add_input_options(ingest, ingest_in, false);
  ingest->add_option("--to", ingest_to, "output format")
      ->check(CLI::IsMember({"table", "vectors"}))
      ->capture_default_str();
  ingest->add_option("-o,--output", output, "output file (default stdout)");

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "product coefficients and masses as JSON");
  InputOptions coeffs_in;
  std::string coeffs_path;
  coeffs->add_option("input", coeffs_path)->required();
  add_input_options(coeffs, coeffs_in, true);
  coeffs->add_option("-o,--output", output);

  // betti
  auto* betti = app.add_subcommand("betti", "betti numbers of a nerve complex or a face list");
  InputOptions betti_in;
  std::string betti_path, complex_kind = "n0", faces_out;
  bool faces_input = false, torsion = false;
  betti->add_option("input", betti_path)->required();
  add_input_options(betti, betti_in, true);
  betti->add_flag("--faces", faces_input, "input is a list of faces, one per line");
  betti->add_option("--complex", complex_kind, "nerve complex of the sample")
      ->check(CLI::IsMember({"n", "n0", "n1"}))
      ->capture_default_str();
  betti->add_flag("--torsion", torsion, "also report torsion coefficients");
  betti->add_option("--write-faces", faces_out, "write the maximal faces to this file");
  betti->add_option("-o,--output", output);

  // daywheel
  auto* daywheel = app.add_subcommand("daywheel", "render the coefficient tree as SVG");
  InputOptions day_in;
  std::string day_path;
  int levels = 0;
  double radius = 400.0;
  daywheel->add_option("input", day_path)->required();
  add_input_options(daywheel, day_in, true);
  daywheel->add_option("--levels", levels, "rings to draw (default min(12, features))");
  daywheel->add_option("--radius", radius, "outer radius in pixels")->capture_default_str();
  daywheel->add_option("-o,--output", output);

  // permute
  auto* permute = app.add_subcommand("permute", "reorder features or average over a permutation group");
  InputOptions perm_in;
  std::string perm_path, perm_cycles, orbit_gens;
  std::size_t bound = 10080;
  permute->add_option("input", perm_path)->required();
  add_input_options(permute, perm_in, true);
  auto* perm_opt = permute->add_option("--perm", perm_cycles, "permutation of tree levels, e.g. \"(1 2)(5 7 9)\"");
  auto* orbit_opt =
      permute->add_option("--orbit-average", orbit_gens, "group generators separated by ';'");
  perm_opt->excludes(orbit_opt);
  permute->add_option("--bound", bound, "largest group to enumerate")->capture_default_str();
  permute->add_option("-o,--output", output);

  // report
  auto* report = app.add_subcommand("report", "violation histogram and top-pattern coverage");
  InputOptions report_in;
  std::vector<std::string> report_paths;
  std::vector<double> coverages{0.5, 0.6};
  std::string out_dir;
  report->add_option("inputs", report_paths, "one or more violation tables; several are merged")->required();
  add_input_options(report, report_in, false);
  report->add_option("--coverage", coverages, "coverage fractions")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  report->add_option("--out-dir", out_dir, "write histogram.csv and top_<pct>.csv here instead of stdout");

  // validate
  auto* validate = app.add_subcommand("validate", "cross-check a corpus directory against expected.json");
  std::string corpus;
  validate->add_option("corpus", corpus, "directory with expected.json and the source tables")->required();
  validate->add_option("-o,--output", output);

  // tree-lemma
  auto* lemma = app.add_subcommand("tree-lemma", "check the general-tree coefficient identities");
  std::string lemma_path;
  bool strict = false;
  lemma->add_option("input", lemma_path, "indented `nu mu` tree")->required();
  lemma->add_flag("--strict", strict, "require coefficients strictly below the upper bound");
  lemma->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (ingest->parsed()) {
      Sample s = load_sample(ingest_path, ingest_in);
      char* out = nullptr;
      check(ingest_to == "vectors" ? dy_sample_write_vectors(s.get(), &out) : dy_sample_write_table(s.get(), &out));
      write_output(output, take(out));
    } else if (coeffs->parsed()) {
      write_output(output, dump(load_tree(coeffs_path, coeffs_in)));
    } else if (betti->parsed()) {
      dy_faces* f = nullptr;
      if (faces_input) {
        check(dy_faces_parse(read_input(betti_path).c_str(), &f));
      } else {
        Tree t = load_tree(betti_path, betti_in);
        const dy_complex_kind kind =
            complex_kind == "n" ? DY_NERVE_PAIRS : complex_kind == "n1" ? DY_NERVE_ONE : DY_NERVE_ZERO;
        check(dy_tree_nerve(t.get(), kind, &f));
      }
      Faces faces(f);
      if (dy_faces_count(f) == 0) {
        std::cerr << "dyadic: the complex is empty\n";
        return kData;
      }
      if (!faces_out.empty()) {
        char* text = nullptr;
        check(dy_faces_write(f, &text));
        write_output(faces_out, take(text));
      }
      char* text = nullptr;
      check(dy_faces_betti(f, torsion ? 1 : 0, &text));
      write_output(output, take(text));
    } else if (daywheel->parsed()) {
      Tree t = load_tree(day_path, day_in);
      if (levels == 0) levels = std::min(12, dy_tree_maxscale(t.get()));
      char* svg = nullptr;
      check(dy_tree_daywheel(t.get(), levels, radius, &svg));
      write_output(output, take(svg));
    } else if (permute->parsed()) {
      if (perm_cycles.empty() && orbit_gens.empty()) usage("permute needs --perm or --orbit-average");
      Tree t = load_tree(perm_path, perm_in);
      dy_tree* result = nullptr;
      if (!perm_cycles.empty()) {
        check(dy_tree_permute(t.get(), perm_cycles.c_str(), &result));
      } else {
        check(dy_tree_orbit_average(t.get(), orbit_gens.c_str(), bound, &result));
      }
      write_output(output, dump(Tree(result)));
    } else if (report->parsed()) {
      std::vector<Sample> samples;
      std::vector<const dy_sample*> raw;
      for (const auto& p : report_paths) {
        samples.push_back(load_sample(p, report_in));
        raw.push_back(samples.back().get());
      }
      Sample merged;
      if (samples.size() == 1) {
        merged = std::move(samples.front());
      } else {
        dy_sample* m = nullptr;
        check(dy_sample_merge(raw.data(), raw.size(), "merged", &m));
        merged.reset(m);
      }
      if (dy_sample_total(merged.get()) == 0) {
        std::cerr << "dyadic: no items in the input\n";
        return kData;
      }
      char* hist = nullptr;
      check(dy_sample_histogram_csv(merged.get(), &hist));
      std::string combined = take(hist);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_output((std::filesystem::path(out_dir) / "histogram.csv").string(), combined);
      }
      for (double c : coverages) {
        char* top = nullptr;
        check(dy_sample_top_csv(merged.get(), c, &top));
        const std::string csv = take(top);
        if (!out_dir.empty()) {
          const auto name = "top_" + std::to_string(static_cast<int>(c * 100 + 0.5)) + ".csv";
          write_output((std::filesystem::path(out_dir) / name).string(), csv);
        } else {
          combined += "\n" + csv;
        }
      }
      if (out_dir.empty()) std::cout << combined;
    } else if (validate->parsed()) {
      char* text = nullptr;
      std::size_t hard = 0;
      check(dy_validate_corpus(corpus.c_str(), &text, &hard));
      write_output(output, take(text));
      return hard == 0 ? kOk : kData;
    } else if (lemma->parsed()) {
      char* text = nullptr;
      int ok = 0;
      check(dy_tree_lemma_check(read_input(lemma_path).c_str(), strict ? 1 : 0, &text, &ok));
      write_output(output, take(text));
      return ok ? kOk : kData;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kOk;
}
