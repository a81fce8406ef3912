#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "branching/core.hpp"
#include "branching/covering.hpp"
#include "branching/inhomogeneous.hpp"
#include "branching/io.hpp"
#include "branching/operators.hpp"
#include "branching/synthesis.hpp"
#include "branching/verify.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace branching;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUser = 2;
constexpr int kExitCap = 3;

// Errors the user can fix; reported with exit code 2.
struct UserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double grid_step = 0.25;
  std::optional<double> u_max;
  double theta_step = kDefaultThetaStep;
  std::optional<double> u_min;
  std::optional<double> depth;
  std::uint64_t seed = 1;
  std::string out = ".";
};

void add_common(CLI::App* app, Options& opt) {
  app->add_option("--grid-step", opt.grid_step, "Lattice step in log2 units")->capture_default_str();
  app->add_option("--u-max", opt.u_max, "Largest lattice scale");
  app->add_option("--theta-step", opt.theta_step, "Spectrum sample spacing")->capture_default_str();
  app->add_option("--u-min", opt.u_min, "Start of the limit window (default u_max / 4)");
  app->add_option("--depth", opt.depth, "Construction or generation depth");
  app->add_option("--seed", opt.seed, "Seed for randomized suites")->capture_default_str();
  app->add_option("--out", opt.out, "Output directory")->capture_default_str();
}

fs::path out_dir(const Options& opt) {
  const fs::path dir(opt.out);
  fs::create_directories(dir);
  return dir;
}

int whole_depth(double depth) {
  if (!(depth >= 1.0) || depth != std::floor(depth) || depth > 56.0) {
    throw UserError("--depth must be an integer in 1..56");
  }
  return static_cast<int>(depth);
}

// Literal CSV, gamma_inverse:<spectrum csv> or h_kappa_lambda:kappa,lambda.
TwoScaleGrid parse_psi(const std::string& text, const GridSpec& spec, double theta_step) {
  const auto colon = text.find(':');
  const std::string head = colon == std::string::npos ? "" : text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "h_kappa_lambda") {
    double kappa = 0.0, lambda = 0.0;
    char comma = 0;
    std::istringstream in(tail);
    if (!(in >> kappa >> comma >> lambda) || comma != ',' || !in.eof()) {
      throw UserError("expected h_kappa_lambda:<kappa>,<lambda>, got '" + text + "'");
    }
    return gamma_inverse(h_kappa_lambda(kappa, lambda, theta_step), spec);
  }
  if (head == "gamma_inverse") return gamma_inverse(spectrum_from_csv(read_text(tail)), spec);
  return grid_from_csv(read_text(text));
}

void write_point_files(const fs::path& dir, const DyadicSet& set) {
  const CellSet& finest = set.level(set.depth());
  write_atomic(dir / "points.csv", points_to_csv(export_points(finest), set.dimension()));
  write_atomic(dir / "points.json", metadata_to_json({set.dimension(), set.depth(), set.rescale_exponent()}));
  write_atomic(dir / "tree.txt", tree_to_text(set));
}

// Point list (with its .json sidecar) or tree file.
DyadicSet read_set(const fs::path& path) {
  const std::string text = read_text(path);
  if (text.rfind("tree", 0) == 0) return tree_from_text(text);
  const fs::path meta = metadata_path(path);
  if (!fs::exists(meta)) throw UserError("missing metadata sidecar " + meta.string());
  return points_from_csv(text, metadata_from_json(read_text(meta)));
}

int cmd_synth(const std::string& psi_spec, int d, const Options& opt) {
  const int depth = whole_depth(opt.depth.value_or(24.0));
  const GridSpec spec(opt.u_max.value_or(depth), opt.grid_step);
  const TwoScaleGrid psi = parse_psi(psi_spec, spec, opt.theta_step);
  const ValidationReport report = validate_B(psi, d, 1e-9 + d * psi.spec().step());
  if (!report.passed()) throw UserError("psi is not in B(" + std::to_string(d) + "): " + report.summary());
  const CompositeDyadicSet composite = assemble_attainable(psi, d, depth);
  const fs::path dir = out_dir(opt);
  write_point_files(dir, composite.as_set());
  std::cout << "wrote " << composite.cells(depth + kCompositeRescale).size() << " cubes to " << dir.string() << '\n';
  return 0;
}

int cmd_estimate(const std::string& input, const Options& opt) {
  const DyadicSet set = read_set(input);
  const double u_max = opt.u_max.value_or(set.max_resolution());
  if (u_max > set.max_resolution()) {
    throw UserError("--u-max " + format_double(u_max) + " exceeds the set's resolution " +
                    std::to_string(set.max_resolution()));
  }
  const GridSpec spec(u_max, opt.grid_step);
  const double u_min = opt.u_min.value_or(u_max / 4.0);
  const CoverageGrid beta = empirical_beta(set, spec);
  const OneVarPL g = average_branching(set);
  const SpectrumEstimate spectrum = spectrum_estimate(beta, u_min, opt.theta_step);
  const BoxDims box = box_dims(g, 1.0, std::max(1.0, u_min), u_max);

  nlohmann::ordered_json summary;
  summary["box_lower"] = box.lower;
  summary["box_upper"] = box.upper;
  summary["window"] = {std::max(1.0, u_min), u_max};
  summary["spectrum_window"] = {spectrum.window_lo, spectrum.window_hi};
  summary["depth_used"] = beta.depth_used;
  summary["center_stride"] = beta.center_stride;
  summary["rescale_exponent"] = beta.rescale_exponent;

  const fs::path dir = out_dir(opt);
  write_atomic(dir / "beta.csv", grid_to_csv(beta.grid));
  write_atomic(dir / "g.csv", pl_to_csv(g));
  write_atomic(dir / "spectrum.csv", spectrum_to_csv(spectrum.spectrum));
  write_atomic(dir / "estimate.json", summary.dump(2) + '\n');
  std::cout << "box dimensions in [" << box.lower << ", " << box.upper << "]\n";
  return 0;
}

int cmd_verify(const std::string& suite, const Options& opt, bool write_file) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw UserError("unknown suite '" + suite + "'");
  }
  const auto results = run_suite(suite, opt.seed);
  const std::string report = report_json(suite, opt.seed, results);
  if (write_file) {
    write_atomic(out_dir(opt) / ("verify_" + suite + ".json"), report);
  } else {
    std::cout << report;
  }
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  return all ? 0 : kExitFail;
}

DyadicSet condensation_of(const std::string& name, int d, int depth, const Options& opt) {
  if (name == "point") return DyadicSet(CellSet(d, depth, std::vector<std::uint64_t>(static_cast<std::size_t>(d), 0)));
  if (name == "interval") {
    const int level = std::min(depth, 20 / d);
    std::vector<std::uint64_t> coords;
    const std::uint64_t side = std::uint64_t{1} << level;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << (level * d)); ++k) {
      for (int c = 0; c < d; ++c) coords.push_back((k >> (c * level)) & (side - 1));
    }
    return DyadicSet(CellSet(d, level, std::move(coords)));
  }
  if (name.rfind("synth:", 0) == 0) {
    const GridSpec spec(opt.u_max.value_or(depth), opt.grid_step);
    return assemble_attainable(parse_psi(name.substr(6), spec, opt.theta_step), d, depth).as_set();
  }
  const DyadicSet set = read_set(name);
  if (set.dimension() != d) throw UserError("condensation dimension does not match the maps");
  return set;
}

int cmd_attractor(const std::string& ifs_path, const Options& opt) {
  const int depth = whole_depth(opt.depth.value_or(20.0));
  const IfsFile file = ifs_from_json(read_text(ifs_path));
  const DyadicSet condensation = condensation_of(file.condensation, file.ifs.dimension(), depth, opt);
  const AttractorSample sample = generate_attractor(file.ifs, condensation, depth);

  nlohmann::ordered_json summary;
  summary["critical_exponent"] = critical_exponent(file.ifs, MoranMethod{1e-12});
  summary["depth"] = depth;
  summary["words_used"] = sample.words_used;
  summary["fixed_points_added"] = sample.fixed_points_added;
  summary["condensation"] = file.condensation;

  const fs::path dir = out_dir(opt);
  write_point_files(dir, sample.cells);
  write_atomic(dir / "attractor.json", summary.dump(2) + '\n');
  std::cout << "wrote " << sample.cells.level(sample.cells.depth()).size() << " cells to " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-scale branching functions: synthesis, estimation and verification"};
  app.require_subcommand(1);
  Options opt;

  std::string psi_spec;
  int dimension = 1;
  auto* synth = app.add_subcommand("synth", "Build a set whose branching function follows psi");
  synth->add_option("psi", psi_spec, "CSV grid, gamma_inverse:<csv> or h_kappa_lambda:<kappa>,<lambda>")->required();
  synth->add_option("-d,--dimension", dimension, "Ambient dimension")->capture_default_str()->check(CLI::Range(1, 8));
  add_common(synth, opt);

  std::string input;
  auto* estimate = app.add_subcommand("estimate", "Covering statistics of a point list or tree file");
  estimate->add_option("input", input, "points.csv (with points.json) or tree.txt")->required();
  add_common(estimate, opt);

  std::string suite = "all";
  bool write_report = false;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suites");
  verify->add_option("suite", suite, "core, operators, attain, inhomog or all")->capture_default_str();
  verify->add_flag("--write", write_report, "Write the report into --out instead of stdout");
  add_common(verify, opt);

  std::string ifs_path;
  auto* attractor = app.add_subcommand("attractor", "Materialize an inhomogeneous attractor");
  attractor->add_option("ifs", ifs_path, "IFS JSON file")->required();
  add_common(attractor, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUser;
  }

  try {
    if (*synth) return cmd_synth(psi_spec, dimension, opt);
    if (*estimate) return cmd_estimate(input, opt);
    if (*verify) return cmd_verify(suite, opt, write_report);
    if (*attractor) return cmd_attractor(ifs_path, opt);
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kExitCap;
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const FormatError& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitFail;
}
