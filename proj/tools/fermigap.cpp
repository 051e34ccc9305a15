// fermigap: command-line front end.
//
// Exit codes: 0 ok, 1 usage, 2 input, 3 numeric, 4 conformance failure.

#include "fermigap/conformance.hpp"
#include "fermigap/ensembles.hpp"
#include "fermigap/errors.hpp"
#include "fermigap/io.hpp"
#include "fermigap/lattice.hpp"
#include "fermigap/quadform.hpp"
#include "fermigap/spin.hpp"
#include "fermigap/stats.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using namespace fermigap;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr std::uint64_t kDefaultSeed = 20240611;

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitConformance = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("FERMIGAP_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used, 10);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("FERMIGAP_SEED is not an unsigned integer: ") + env);
  }
}

// Output sink for one experiment: CSV files plus manifest.json when an
// output directory is given, nothing otherwise.
class Outputs {
 public:
  Outputs(std::string command, std::optional<fs::path> dir, std::uint64_t seed)
      : command_(std::move(command)), dir_(std::move(dir)), seed_(seed) {
    if (dir_) fs::create_directories(*dir_);
  }

  Json& parameters() { return parameters_; }

  void csv(const std::string& name, const std::string& text) {
    if (!dir_) return;
    const fs::path path = *dir_ / name;
    write_text_file(path, text);
    outputs_.push_back(path.string());
  }

  void finish(const Json& summary) {
    if (!dir_) return;
    const fs::path summary_path = *dir_ / "summary.json";
    write_text_file(summary_path, summary.dump(2) + "\n");
    outputs_.push_back(summary_path.string());
    const Json manifest{{"command", command_},
                        {"parameters", parameters_},
                        {"seed", seed_},
                        {"tool_version", kVersion},
                        {"outputs", outputs_}};
    write_text_file(*dir_ / "manifest.json", manifest.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::optional<fs::path> dir_;
  std::uint64_t seed_;
  Json parameters_ = Json::object();
  std::vector<std::string> outputs_;
};

std::optional<fs::path> maybe_dir(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

void print(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

Json check(double value, double threshold, const char* relation, bool pass) {
  return {{"value", value}, {"threshold", threshold}, {"relation", relation}, {"pass", pass}};
}

// --- gap / spectrum / profile / lattice / jw --------------------------------

struct GapArgs {
  std::string input;
  std::optional<double> tol;
};

int cmd_gap(const GapArgs& args) {
  const Json doc = read_json_file(args.input);
  GapReport report;
  if (is_structured_json(doc)) {
    report = gap_from_g_eigenvalues(g_eigenvalues(structured_from_json(doc)), args.tol);
  } else {
    report = ground_gap(pair_from_json(doc), args.tol);
  }
  print(gap_report_to_json(report));
  return 0;
}

struct SpectrumArgs {
  std::string input;
  int max_modes = kSpectrumModeCap;
};

int cmd_spectrum(const SpectrumArgs& args) {
  const CoefficientPair pair = pair_from_json(read_json_file(args.input));
  const auto levels = subset_sum_spectrum(singular_values(pair), args.max_modes);
  std::ostringstream out;
  out << "index,energy\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out << i << "," << format_double(levels[i]) << "\n";
  }
  std::cout << out.str();
  return 0;
}

struct ProfileArgs {
  std::string input;
  int grid = 101;
  std::optional<double> tol;
  std::string out_dir;
};

int cmd_profile(const ProfileArgs& args, std::uint64_t seed) {
  const Json doc = read_json_file(args.input);
  const auto grid = uniform_grid(args.grid);
  std::vector<ProfilePoint> points;
  std::string path;
  if (is_structured_json(doc)) {
    points = structured_gap_profile(structured_from_json(doc), grid, args.tol);
    path = "fft";
  } else {
    points = gap_profile({pair_from_json(doc), args.input}, grid, args.tol).points;
    path = "dense-svd";
  }
  const std::size_t best = profile_argmin(points);
  const double gamma = points.back().report.gap;
  double linearity = 0.0;
  std::ostringstream csv;
  csv << "s,gap,degenerate\n";
  Json rows = Json::array();
  for (const auto& p : points) {
    linearity = std::max(linearity, std::abs(p.report.gap - (2.0 * (1.0 - p.s) + p.s * gamma)));
    csv << format_double(p.s) << "," << format_double(p.report.gap) << ","
        << (p.report.degenerate ? 1 : 0) << "\n";
    rows.push_back({{"s", p.s}, {"gap", p.report.gap}, {"degenerate", p.report.degenerate}});
  }
  Outputs out("profile", maybe_dir(args.out_dir), seed);
  out.parameters() = {{"input", args.input}, {"grid", args.grid}, {"path", path}};
  out.csv("profile.csv", csv.str());
  const Json summary{
      {"path", path},
      {"grid", args.grid},
      {"argmin", {{"index", best}, {"s", points[best].s}, {"gap", points[best].report.gap}}},
      {"linear", linearity <= 1e-10},
      {"linearity_residual", linearity},
      {"rows", rows}};
  out.finish(summary);
  print(summary);
  return 0;
}

int cmd_lattice_expand(const std::string& input) {
  print(pair_to_json(expand(structured_from_json(read_json_file(input)))));
  return 0;
}

int cmd_jw(const std::string& input, const std::string& direction) {
  const Json doc = read_json_file(input);
  std::string dir = direction;
  if (dir == "auto") {
    if (doc.is_object() && doc.contains("w")) {
      dir = "to-ab";
    } else if (doc.is_object() && doc.contains("a")) {
      dir = "to-w";
    } else {
      throw InputError("document has neither \"w\" nor \"a\"; cannot infer direction");
    }
  }
  if (dir == "to-ab") {
    print(pair_to_json(w_to_ab(w_from_json(doc))));
  } else {
    print(w_to_json(ab_to_w(pair_from_json(doc))));
  }
  return 0;
}

// --- ensemble ---------------------------------------------------------------

struct EnsembleArgs {
  std::string kind;
  std::string experiment;
  int n = 0;
  int samples = 0;
  std::vector<double> xs{0.5, 1.0, 2.0};
  int grid = 101;
  std::string out_dir;
};

EnsembleKind kind_for(const std::string& experiment) {
  if (experiment == "edelman" || experiment == "figure1") return EnsembleKind::gaussian;
  if (experiment == "figure2") return EnsembleKind::wishart;
  return EnsembleKind::bounded_uniform;
}

int cmd_ensemble(const EnsembleArgs& args, std::uint64_t seed) {
  const EnsembleKind kind = kind_for(args.experiment);
  if (!args.kind.empty() && ensemble_kind_from_string(args.kind) != kind) {
    throw UsageError("experiment " + args.experiment + " uses the " + to_string(kind) +
                     " ensemble, not " + args.kind);
  }
  const std::map<std::string, std::pair<int, int>> defaults{
      {"edelman", {64, 2000}}, {"survival", {128, 2000}},
      {"figure1", {10, 1000}}, {"figure2", {8, 1}}};
  const int n = args.n > 0 ? args.n : defaults.at(args.experiment).first;
  const int samples = args.samples > 0 ? args.samples : defaults.at(args.experiment).second;

  Outputs out("ensemble", maybe_dir(args.out_dir), seed);
  out.parameters() = {{"experiment", args.experiment}, {"kind", to_string(kind)},
                      {"n", n}, {"samples", samples}};
  Json summary{{"experiment", args.experiment}, {"kind", to_string(kind)},
               {"n", n}, {"samples", samples}, {"seed", seed}};
  bool pass = true;

  if (args.experiment == "edelman") {
    const auto r = gap_distribution_experiment({kind, n, samples, seed, {}});
    std::ostringstream csv;
    csv << "sample,gap,scaled\n";
    for (std::size_t i = 0; i < r.gaps.size(); ++i) {
      csv << i << "," << format_double(r.gaps[i]) << "," << format_double(r.scaled[i]) << "\n";
    }
    out.csv("samples.csv", csv.str());
    const bool ks_ok = r.ks_distance < 0.06;
    const bool median_ok = std::abs(r.median - edelman_median()) <= 0.08;
    pass = ks_ok && median_ok;
    summary["statistics"] = {{"ks_distance", r.ks_distance},
                             {"median", r.median},
                             {"limit_median", edelman_median()},
                             {"degenerate_count", r.degenerate_count}};
    summary["checks"] = {{"ks_distance", check(r.ks_distance, 0.06, "<", ks_ok)},
                         {"median", check(std::abs(r.median - edelman_median()), 0.08,
                                          "|median - limit| <=", median_ok)}};
    summary["note"] = "thresholds are empirical; the limit law is asymptotic in n";
  } else if (args.experiment == "survival") {
    const auto r = survival_experiment({kind, n, samples, seed, {}}, args.xs);
    std::ostringstream csv;
    csv << "x,empirical,standard_error,limit,finite_n\n";
    Json points = Json::array();
    Json checks = Json::object();
    for (const auto& p : r.points) {
      csv << format_double(p.x) << "," << format_double(p.empirical) << ","
          << format_double(p.standard_error) << "," << format_double(p.limit) << ","
          << format_double(p.finite_n) << "\n";
      const bool ok = std::abs(p.empirical - p.limit) <= 0.05;
      pass = pass && ok;
      points.push_back({{"x", p.x}, {"empirical", p.empirical},
                        {"standard_error", p.standard_error}, {"limit", p.limit},
                        {"finite_n", p.finite_n}});
      checks["x=" + format_double(p.x)] =
          check(std::abs(p.empirical - p.limit), 0.05, "|empirical - exp(-x)| <=", ok);
    }
    out.csv("survival.csv", csv.str());
    std::ostringstream gaps;
    gaps << "sample,gap\n";
    for (std::size_t i = 0; i < r.gaps.size(); ++i) gaps << i << "," << format_double(r.gaps[i]) << "\n";
    out.csv("samples.csv", gaps.str());
    summary["statistics"] = {{"points", points}};
    summary["checks"] = checks;
    summary["note"] = "thresholds are empirical; the limit law is asymptotic in n";
  } else if (args.experiment == "figure1") {
    const auto r = figure1_experiment(n, samples, seed);
    const auto& h = r.histogram;
    std::ostringstream csv;
    csv << "bin_lo,bin_hi,ground_count,other_count\n";
    for (std::size_t i = 0; i + 1 < h.bin_edges.size(); ++i) {
      csv << format_double(h.bin_edges[i]) << "," << format_double(h.bin_edges[i + 1]) << ","
          << h.ground_gap_counts[i] << "," << h.other_gap_counts[i] << "\n";
    }
    out.csv("histogram.csv", csv.str());
    const double ratio = r.median_ground_gap / r.median_other_gap;
    pass = ratio >= 10.0;
    summary["statistics"] = {{"median_ground_gap", r.median_ground_gap},
                             {"median_other_gap", r.median_other_gap},
                             {"mean_ground_gap", r.mean_ground_gap},
                             {"ratio", ratio}};
    summary["checks"] = {{"ratio", check(ratio, 10.0, ">=", pass)}};
  } else if (args.experiment == "figure2") {
    const auto grid = uniform_grid(args.grid);
    const auto r = figure2_experiment(n, seed, grid);
    std::ostringstream levels;
    levels << "s,level,energy\n";
    std::ostringstream gaps;
    gaps << "s,gap\n";
    for (std::size_t i = 0; i < r.s_grid.size(); ++i) {
      const std::string s = format_double(r.s_grid[i]);
      for (std::size_t k = 0; k < r.levels[i].size(); ++k) {
        levels << s << "," << k << "," << format_double(r.levels[i][k]) << "\n";
      }
      gaps << s << "," << format_double(r.gaps[i]) << "\n";
    }
    out.csv("levels.csv", levels.str());
    out.csv("gaps.csv", gaps.str());
    pass = r.linearity_residual <= 1e-10;
    summary["statistics"] = {{"gamma_at_one", r.gamma_at_one},
                             {"linearity_residual", r.linearity_residual},
                             {"grid", args.grid},
                             {"levels_per_point", r.levels.front().size()}};
    summary["checks"] = {{"linearity", check(r.linearity_residual, 1e-10, "<=", pass)}};
  } else {
    throw UsageError("unknown experiment " + args.experiment);
  }
  summary["pass"] = pass;
  out.finish(summary);
  print(summary);
  return 0;
}

// --- cluster / ising ----------------------------------------------------------

Json fit(const std::vector<double>& ns, const std::vector<double>& gaps) {
  if (ns.size() < 2) return nullptr;
  return loglog_slope(ns, gaps);
}

int cmd_cluster(const std::vector<int>& ns, int grid, const std::string& out_dir,
                std::uint64_t seed) {
  Outputs out("cluster", maybe_dir(out_dir), seed);
  out.parameters() = {{"n", ns}, {"grid", grid}};
  Json rows = Json::array();
  std::vector<double> xs, ys;
  std::ostringstream csv;
  csv << "n,circulant,s_star,min_gap\n";
  for (int n : ns) {
    const auto pair = w_to_ab(build_cluster_w(n).w());
    const bool circulant = circulant_from_pair(pair).has_value();
    Json row{{"n", n}, {"circulant", circulant}};
    if (circulant) {
      const auto r = cluster_min_gap(n, grid);
      row["s_star"] = r.s_star;
      row["min_gap"] = r.min_gap;
      xs.push_back(n);
      ys.push_back(r.min_gap);
      csv << n << ",1," << format_double(r.s_star) << "," << format_double(r.min_gap) << "\n";
    } else {
      csv << n << ",0,,\n";
    }
    if (n <= 10) row["stabilizers"] = cluster_stabilizer_expectations(n);
    rows.push_back(row);
  }
  out.csv("cluster.csv", csv.str());
  const Json summary{{"rows", rows}, {"grid", grid}, {"exponent", fit(xs, ys)}};
  out.finish(summary);
  print(summary);
  return 0;
}

int cmd_ising(const std::vector<int>& ns, int grid, const std::string& out_dir,
              std::uint64_t seed) {
  Outputs out("ising", maybe_dir(out_dir), seed);
  out.parameters() = {{"n", ns}, {"grid", grid}};
  Json rows = Json::array();
  std::vector<double> xs, ys;
  std::ostringstream csv;
  csv << "n,s_star,min_gap,raw_gap\n";
  for (int n : ns) {
    const auto r = ising_min_gap(n, grid);
    rows.push_back({{"n", n}, {"s_star", r.s_star}, {"min_gap", r.min_gap},
                    {"raw_gap", r.raw_gap}});
    xs.push_back(n);
    ys.push_back(r.min_gap);
    csv << n << "," << format_double(r.s_star) << "," << format_double(r.min_gap) << ","
        << format_double(r.raw_gap) << "\n";
  }
  out.csv("ising.csv", csv.str());
  const Json summary{{"rows", rows}, {"grid", grid}, {"slope", fit(xs, ys)},
                     {"gap_definition", "2 (lambda_1 + lambda_2)"}};
  out.finish(summary);
  print(summary);
  return 0;
}

// --- verify -------------------------------------------------------------------

int cmd_verify(VerifyOptions options, const std::string& out_dir) {
  const VerifyReport report = run_verify(options);
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name}, {"max_residual", c.max_residual},
                      {"threshold", c.threshold}, {"cases", c.cases}, {"pass", c.pass},
                      {"worst_case", c.worst_case}, {"failing_case", c.failing_case}});
  }
  const Json summary{{"seed", options.seed}, {"n_max", options.n_max},
                     {"trials", options.trials}, {"inject_fault", options.inject_fault},
                     {"checks", checks}, {"pass", report.pass()}};
  Outputs out("verify", maybe_dir(out_dir), options.seed);
  out.parameters() = {{"n_max", options.n_max}, {"trials", options.trials},
                      {"inject_fault", options.inject_fault}};
  out.finish(summary);
  print(summary);
  if (!report.pass()) {
    for (const auto& c : report.checks) {
      if (!c.pass) std::cerr << "fermigap: check " << c.name << " failed at " << c.failing_case << "\n";
    }
    return kExitConformance;
  }
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Spectral gaps of quadratic fermionic Hamiltonians", "fermigap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::optional<std::uint64_t> seed_opt;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed_opt, "RNG seed (default: $FERMIGAP_SEED or built-in)");
  };

  GapArgs gap_args;
  auto* gap = app.add_subcommand("gap", "Ground-state gap of a pair or lattice file (JSON)");
  gap->add_option("input", gap_args.input, "pair or structured JSON")->required();
  gap->add_option("--tol", gap_args.tol, "zero-mode tolerance")->check(CLI::NonNegativeNumber);

  SpectrumArgs spectrum_args;
  auto* spectrum = app.add_subcommand("spectrum", "All 2^n energies; CSV columns index,energy");
  spectrum->add_option("input", spectrum_args.input, "pair JSON")->required();
  spectrum->add_option("--max-modes", spectrum_args.max_modes, "enumeration cap")
      ->check(CLI::Range(1, kSpectrumModeCap));

  ProfileArgs profile_args;
  auto* profile = app.add_subcommand(
      "profile", "Gap along (1-s) H0 + s H; profile.csv columns s,gap,degenerate");
  profile->add_option("input", profile_args.input, "pair or structured JSON")->required();
  profile->add_option("--grid", profile_args.grid, "grid points on [0, 1]")
      ->check(CLI::Range(2, 1 << 24));
  profile->add_option("--tol", profile_args.tol, "zero-mode tolerance")
      ->check(CLI::NonNegativeNumber);
  profile->add_option("--out-dir", profile_args.out_dir, "write CSV and manifest here");

  auto* lattice = app.add_subcommand("lattice", "Structured lattice utilities");
  lattice->require_subcommand(1);
  std::string expand_input;
  auto* expand_cmd = lattice->add_subcommand("expand", "Dense pair JSON of a structured spec");
  expand_cmd->add_option("input", expand_input, "structured JSON")->required();

  EnsembleArgs ens_args;
  auto* ensemble = app.add_subcommand(
      "ensemble",
      "Random-ensemble experiments. CSV: edelman samples.csv (sample,gap,scaled); "
      "survival survival.csv (x,empirical,standard_error,limit,finite_n); figure1 "
      "histogram.csv (bin_lo,bin_hi,ground_count,other_count); figure2 levels.csv "
      "(s,level,energy) and gaps.csv (s,gap)");
  ensemble->add_option("--experiment", ens_args.experiment, "experiment")
      ->required()
      ->check(CLI::IsMember({"figure1", "figure2", "survival", "edelman"}));
  ensemble->add_option("--kind", ens_args.kind, "ensemble (implied by the experiment)")
      ->check(CLI::IsMember({"gaussian", "wishart", "bounded_uniform"}));
  ensemble->add_option("--n", ens_args.n, "modes")->check(CLI::Range(2, 1 << 14));
  ensemble->add_option("--samples", ens_args.samples, "sample count")
      ->check(CLI::PositiveNumber);
  ensemble->add_option("--x", ens_args.xs, "survival thresholds")->check(CLI::PositiveNumber);
  ensemble->add_option("--grid", ens_args.grid, "figure2 grid points")
      ->check(CLI::Range(2, 100000));
  ensemble->add_option("--out-dir", ens_args.out_dir, "write CSV and manifest here");
  add_seed(ensemble);

  std::string jw_input;
  std::string jw_direction = "auto";
  auto* jw = app.add_subcommand("jw", "Convert between W JSON and pair JSON");
  jw->add_option("input", jw_input, "W or pair JSON")->required();
  jw->add_option("--direction", jw_direction, "to-ab, to-w or auto")
      ->check(CLI::IsMember({"auto", "to-ab", "to-w"}));

  std::vector<int> cluster_ns{4};
  int cluster_grid = 201;
  std::string cluster_out;
  auto* cluster = app.add_subcommand(
      "cluster", "Cluster Hamiltonian checks; cluster.csv columns n,circulant,s_star,min_gap");
  cluster->add_option("--n", cluster_ns, "chain lengths")->check(CLI::Range(4, 1 << 20));
  cluster->add_option("--grid", cluster_grid, "grid points")->check(CLI::Range(2, 1 << 20));
  cluster->add_option("--out-dir", cluster_out, "write CSV and manifest here");

  std::vector<int> ising_ns{8};
  int ising_grid = 51;
  std::string ising_out;
  auto* ising = app.add_subcommand(
      "ising", "Transverse-field chain minimum gap; ising.csv columns n,s_star,min_gap,raw_gap");
  ising->add_option("--n", ising_ns, "chain lengths")->check(CLI::Range(2, 4096));
  ising->add_option("--grid", ising_grid, "grid points")->check(CLI::Range(3, 100000));
  ising->add_option("--out-dir", ising_out, "write CSV and manifest here");

  VerifyOptions verify_opts;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Cross-route conformance suite");
  verify->add_option("--n-max", verify_opts.n_max, "largest mode count")
      ->check(CLI::Range(1, kDenseQubitCap));
  verify->add_option("--trials", verify_opts.trials, "instances per mode count")
      ->check(CLI::PositiveNumber);
  verify->add_flag("--inject-fault", verify_opts.inject_fault,
                   "negate one B entry pair in the fermionic route");
  verify->add_option("--out-dir", verify_out, "write summary and manifest here");
  add_seed(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  auto seed = [&] { return seed_opt ? *seed_opt : default_seed(); };

  if (*gap) return cmd_gap(gap_args);
  if (*spectrum) return cmd_spectrum(spectrum_args);
  if (*profile) return cmd_profile(profile_args, seed());
  if (*expand_cmd) return cmd_lattice_expand(expand_input);
  if (*ensemble) return cmd_ensemble(ens_args, seed());
  if (*jw) return cmd_jw(jw_input, jw_direction);
  if (*cluster) return cmd_cluster(cluster_ns, cluster_grid, cluster_out, seed());
  if (*ising) return cmd_ising(ising_ns, ising_grid, ising_out, seed());
  if (*verify) {
    verify_opts.seed = seed();
    return cmd_verify(verify_opts, verify_out);
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "fermigap: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "fermigap: invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionError& e) {
    std::cerr << "fermigap: invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    std::cerr << "fermigap: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "fermigap: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "fermigap: numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const PreconditionError& e) {
    std::cerr << "fermigap: numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "fermigap: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "fermigap: internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
