#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tvz/io.hpp"
#include "tvz/local_algebra.hpp"
#include "tvz/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitParse = 2;
constexpr int kExitDiscrepancy = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tvz::ParseError("cannot read input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw tvz::ParseError("cannot write output file: " + out_path);
  out << text;
}

int env_threads() {
  const char* t = std::getenv("TVZ_THREADS");
  if (!t) return 0;
  int n = std::atoi(t);
  return n > 0 ? n : 0;
}

tvz::TropCover load_cover(const std::string& path, std::string* raw = nullptr,
                          tvz::CoverDocument* doc_out = nullptr) {
  std::string text = read_file(path);
  tvz::CoverDocument doc = tvz::parse_cover_document(text);
  if (raw) *raw = text;
  if (doc_out) *doc_out = doc;
  return tvz::cover_from_document(doc);
}

int cmd_validate(const std::string& input) {
  tvz::TropCover cover = load_cover(input);
  tvz::ValidationReport rep = tvz::validate(cover);
  std::ostringstream os;
  for (const auto& i : rep.issues)
    os << (i.warning ? "warning" : "violation") << " [" << i.code << "]"
       << (i.location.empty() ? "" : " at " + i.location) << ": " << i.message << "\n";
  os << (rep.pass() ? "PASS" : "FAIL") << "\n";
  std::cout << os.str();
  return rep.pass() ? kExitOk : kExitDomain;
}

int cmd_enumerate(const std::string& input) {
  tvz::TropCover cover = load_cover(input);
  tvz::ValidationReport rep = tvz::validate(cover);
  if (!rep.pass()) {
    std::cout << "invalid cover; run 'validate' for the report\n";
    return kExitDomain;
  }
  auto fns = tvz::enumerate_admissible(cover);
  std::ostringstream os;
  os << "admissible functions: " << fns.size() << "\n";
  const auto& names = cover.coordinate_names();
  for (size_t i = 0; i < fns.size(); ++i) {
    os << "[" << i << "] support " << fns[i].support << "\n";
    os << "    target slopes:";
    for (const auto& [e, s] : fns[i].target_shadow.edge_slopes) os << " " << e << "=" << tvz::rat_str(s);
    os << "\n    source slopes:";
    for (const auto& [e, s] : fns[i].source_function.edge_slopes) os << " " << e << "=" << tvz::rat_str(s);
    os << "\n    shadow values:";
    for (const auto& [v, f] : fns[i].target_shadow.vertex_values)
      os << " " << v << "=" << f.to_string(names);
    os << "\n";
  }
  std::cout << os.str();
  return kExitOk;
}

int run_and_report(const std::string& input, bool coarsen, const std::string& out_path,
                   bool classify_table) {
  std::string raw;
  tvz::TropCover cover = load_cover(input, &raw);
  tvz::ValidationReport rep = tvz::validate(cover);
  if (!rep.pass()) {
    std::cout << "invalid cover; run 'validate' for the report\n";
    return kExitDomain;
  }
  tvz::PipelineOptions opts;
  opts.coarsen = coarsen;
  opts.threads = env_threads();
  tvz::PipelineResult result = tvz::run_pipeline(cover, opts);

  if (classify_table) {
    std::ostringstream os;
    const tvz::Fan& fan = result.final_fan();
    const auto& labels = result.final_labels();
    os << "cones: " << fan.maximal.size() << (coarsen ? " (coarsened)" : "") << "\n";
    for (size_t i = 0; i < fan.maximal.size(); ++i) {
      os << "[" << i << "] rays";
      for (const auto& r : fan.maximal[i].cone.rays) {
        os << " (";
        for (size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << r[k].get_str();
        os << ")";
      }
      os << " fiber=" << labels[i].fiber.tag() << " d1=" << labels[i].delta.d1_component
         << " levels=" << labels[i].levels << (labels[i].diag.smooth ? "" : " non-smooth") << "\n";
    }
    for (const std::string& d : result.discrepancies) os << "discrepancy: " << d << "\n";
    write_output(out_path, os.str());
  } else {
    write_output(out_path, tvz::serialize_fan_document(result, coarsen, tvz::fnv1a_hex(raw)));
    for (const std::string& d : result.discrepancies) std::cerr << "discrepancy: " << d << "\n";
  }
  return result.discrepancies.empty() ? kExitOk : kExitDiscrepancy;
}

int cmd_algebra(const std::string& germ, int m, const std::string& corpus_path, int order) {
  std::vector<std::pair<std::string, int>> germs;
  if (!corpus_path.empty()) {
    std::string text = read_file(corpus_path);
    // minimal corpus format: lines "kind m"
    std::istringstream is(text);
    std::string kind;
    int mm;
    while (is >> kind >> mm) germs.push_back({kind, mm});
  } else {
    germs.push_back({germ, m});
  }
  std::ostringstream os;
  os << "germ | m | delta | genus | 2delta | gorenstein | decomposable\n";
  for (const auto& [kind, mm] : germs) {
    tvz::GermSpec spec = tvz::table_germ(kind, mm);
    int delta = tvz::delta_invariant(spec, order);
    std::string g = spec.has_ribbon() ? "-" : std::to_string(tvz::genus(spec, order));
    bool two = tvz::check_two_delta(spec, order);
    bool gor = tvz::gorenstein_check(spec, order);
    bool dec = tvz::decomposability_check(spec, order);
    os << spec.name << " | " << spec.reduced_branch_count() << " | " << delta << " | " << g << " | "
       << (two ? "yes" : "no") << " | " << (gor ? "yes" : "no") << " | " << (dec ? "yes" : "no")
       << "\n";
  }
  std::cout << os.str();
  return kExitOk;
}

int cmd_export(const std::string& input, const std::string& format, int cone_index, bool coarsen,
               const std::string& out_path) {
  tvz::TropCover cover = load_cover(input);
  tvz::ValidationReport rep = tvz::validate(cover);
  if (!rep.pass()) {
    std::cout << "invalid cover; run 'validate' for the report\n";
    return kExitDomain;
  }
  const tvz::FanCone* labelled = nullptr;
  tvz::PipelineResult result;
  if (cone_index >= 0) {
    tvz::PipelineOptions opts;
    opts.coarsen = coarsen;
    opts.threads = env_threads();
    result = tvz::run_pipeline(cover, opts);
    const tvz::Fan& fan = result.final_fan();
    if (cone_index >= static_cast<int>(fan.maximal.size()))
      throw tvz::ParseError("cone index out of range");
    labelled = &fan.maximal[cone_index];
  }
  std::string text =
      format == "tikz" ? tvz::export_tikz(cover, labelled) : tvz::export_dot(cover, labelled);
  write_output(out_path, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tvz - subdivisions and Gorenstein fibre classification for tropical degree-two covers"};
  app.require_subcommand(1);

  std::string input, out_path, format = "dot", germ, corpus;
  bool coarsen = false;
  bool classify_coarsen = true;
  int cone_index = -1, m = 0, truncation = tvz::kDefaultOrder;

  auto* validate = app.add_subcommand("validate", "check the cover invariants");
  validate->add_option("input", input)->required();

  auto* enumerate = app.add_subcommand("enumerate", "list the admissible functions");
  enumerate->add_option("input", input)->required();

  auto* subdivide = app.add_subcommand("subdivide", "compute the subdivision of the base cone");
  subdivide->add_option("input", input)->required();
  subdivide->add_flag("--coarsen", coarsen, "emit the combinatorial-type coarsening");
  subdivide->add_option("--out", out_path, "write the fan document to a file");

  auto* classify = app.add_subcommand("classify", "per-cone fibre classification table");
  classify->add_option("input", input)->required();
  classify->add_flag("--coarsen,!--no-coarsen{false}", classify_coarsen,
                     "classify the coarsened fan (default) or the full subdivision");
  classify->add_option("--out", out_path);

  auto* algebra = app.add_subcommand("algebra", "local-algebra invariants of the catalogued germs");
  algebra->add_option("--germ", germ, "germ kind (node, cusp, tacnode, ramphoid, typeI, typeII, lines, ribbon-tail, ribbon-line, two-cusps)");
  algebra->add_option("m", m, "branch/tail count, where applicable");
  algebra->add_option("--corpus", corpus, "corpus file with 'kind m' lines");
  algebra->add_option("--truncation", truncation, "truncation order N");

  auto* exportc = app.add_subcommand("export", "graph drawings of the cover");
  exportc->add_option("input", input)->required();
  exportc->add_option("--format", format)->check(CLI::IsMember({"dot", "tikz"}));
  exportc->add_option("--cone", cone_index, "annotate with lambda on the given cone");
  exportc->add_flag("--coarsen", coarsen);
  exportc->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(input);
    if (enumerate->parsed()) return cmd_enumerate(input);
    if (subdivide->parsed()) return run_and_report(input, coarsen, out_path, false);
    if (classify->parsed()) return run_and_report(input, classify_coarsen, out_path, true);
    if (algebra->parsed()) {
      if (corpus.empty() && germ.empty()) {
        std::cerr << "algebra requires --germ or --corpus\n";
        return kExitParse;
      }
      return cmd_algebra(germ, m, corpus, truncation);
    }
    if (exportc->parsed()) return cmd_export(input, format, cone_index, coarsen, out_path);
  } catch (const tvz::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const tvz::DiscrepancyError& e) {
    std::cerr << "discrepancy: " << e.what() << "\n";
    return kExitDiscrepancy;
  } catch (const tvz::DenominatorError& e) {
    std::cerr << "discrepancy: " << e.what() << "\n";
    return kExitDiscrepancy;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
