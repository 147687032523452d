// Command-line front end: construction, analysis, bound evaluation, recovery
// experiments, Monte Carlo cap estimation, and brute-force RIC, all emitting
// versioned JSON on standard output (progress and errors go to standard
// error, so machine consumers never have to parse it).
//
// Exit codes are a stable contract: 0 success, 1 usage or I/O error,
// 2 construction failure (the report is still written), 3 recovery-guarantee
// violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "incoherent/bounds.hpp"
#include "incoherent/construct.hpp"
#include "incoherent/matrix.hpp"
#include "incoherent/recovery.hpp"
#include "incoherent/reports.hpp"
#include "incoherent/version.hpp"

namespace {

using incoherent::RunManifest;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConstructionFailed = 2;
constexpr int kExitGuaranteeViolated = 3;

std::string join_command_line(int argc, char** argv) {
  std::ostringstream out;
  for (int i = 0; i < argc; ++i) {
    if (i) out << ' ';
    out << argv[i];
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

struct ConstructArgs {
  long s = 0;
  long n = 0;
  long m = 0;
  std::uint64_t seed = 0;
  long budget = 10;
  double threshold = 0.0;
  std::string out_path;
  std::string report_path;
};

int run_construct(const ConstructArgs& args, const std::string& command_line) {
  incoherent::ConstructionParams params;
  params.s = args.s;
  params.n = args.n;
  params.m = args.m;
  params.seed = args.seed;
  params.budget = args.budget;
  params.threshold = args.threshold;

  const incoherent::ConstructionResult result = incoherent::construct(params);
  const RunManifest manifest = RunManifest::current(command_line, args.seed);
  const nlohmann::json report =
      incoherent::wrap_report("construction", manifest, incoherent::construction_json(result.report));

  write_text_file(args.report_path, report.dump(2) + "\n");
  print_json(report);

  if (!result.report.success) {
    std::cerr << "construction failed: column " << result.report.failed_at_column
              << " exhausted its " << result.report.budget << "-candidate budget (threshold "
              << result.report.threshold << ")\n";
    return kExitConstructionFailed;
  }

  result.matrix->store_file(args.out_path);
  std::cerr << "constructed " << result.report.m << "x" << result.report.n
            << " matrix, coherence " << result.report.achieved_coherence << ", "
            << result.report.candidates_drawn << " candidates -> " << args.out_path << '\n';
  return kExitOk;
}

struct AnalyzeArgs {
  std::string matrix_path;
  std::optional<long> s;
};

int run_analyze(const AnalyzeArgs& args, const std::string& command_line) {
  const incoherent::SensingMatrix a = incoherent::SensingMatrix::load_file(args.matrix_path);
  const RunManifest manifest = RunManifest::current(command_line, std::nullopt);
  print_json(incoherent::wrap_report("analysis", manifest, incoherent::analysis_json(a, args.s)));
  return kExitOk;
}

struct BoundsArgs {
  long s = 0;
  long n = 0;
  std::optional<long> m;
  bool csv = false;
};

int run_bounds(const BoundsArgs& args, const std::string& command_line) {
  const incoherent::BoundsReport report = incoherent::make_bounds_report(args.s, args.n, args.m);
  if (args.csv) {
    std::cout << incoherent::bounds_csv(report);
    return kExitOk;
  }
  const RunManifest manifest = RunManifest::current(command_line, std::nullopt);
  print_json(incoherent::wrap_report("bounds", manifest, incoherent::bounds_json(report)));
  return kExitOk;
}

struct RecoverArgs {
  std::string matrix_path;
  long s = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  bool csv = false;
};

int run_recover(const RecoverArgs& args, const std::string& command_line) {
  const incoherent::SensingMatrix a = incoherent::SensingMatrix::load_file(args.matrix_path);
  const incoherent::ExperimentSummary summary =
      incoherent::recovery_experiment(a, args.s, args.trials, args.seed);

  if (args.csv) {
    std::cout << incoherent::experiment_csv(summary);
  } else {
    const RunManifest manifest = RunManifest::current(command_line, args.seed);
    print_json(incoherent::wrap_report("recovery", manifest, incoherent::experiment_json(summary)));
  }

  if (summary.condition_held && summary.success_rate < 1.0) {
    std::cerr << "guarantee violated: coherence " << summary.coherence << " < 1/(2s-1) but "
              << (summary.trials - summary.successes) << "/" << summary.trials
              << " trials failed\n";
    return kExitGuaranteeViolated;
  }
  return kExitOk;
}

struct MonteCarloArgs {
  long m = 0;
  double t = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
};

int run_montecarlo(const MonteCarloArgs& args, const std::string& command_line) {
  const incoherent::CapEstimate estimate =
      incoherent::monte_carlo_cap(args.m, args.t, args.samples, args.seed);
  const RunManifest manifest = RunManifest::current(command_line, args.seed);
  print_json(incoherent::wrap_report("montecarlo", manifest, incoherent::cap_json(estimate)));
  return kExitOk;
}

struct RicArgs {
  std::string matrix_path;
  long s = 0;
};

int run_ric(const RicArgs& args, const std::string& command_line) {
  const incoherent::SensingMatrix a = incoherent::SensingMatrix::load_file(args.matrix_path);
  const incoherent::RicEstimate estimate = incoherent::ric_brute_force(a, args.s);
  const RunManifest manifest = RunManifest::current(command_line, std::nullopt);
  print_json(incoherent::wrap_report("ric", manifest, incoherent::ric_json(estimate)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-coherence sensing matrix toolkit"};
  app.set_version_flag("--version", std::string(incoherent::kVersion));
  app.require_subcommand(1);
  const std::string command_line = join_command_line(argc, argv);

  ConstructArgs construct_args;
  CLI::App* construct = app.add_subcommand(
      "construct", "Build a low-coherence matrix by seeded rejection sampling");
  construct->add_option("--s", construct_args.s, "Target sparsity")->required();
  construct->add_option("--N", construct_args.n, "Number of columns")->required();
  construct->add_option("--m", construct_args.m, "Rows (default: sizing rule for s, N)");
  construct->add_option("--seed", construct_args.seed, "Master seed")->required();
  construct->add_option("--budget", construct_args.budget, "Candidate draws per column")
      ->capture_default_str();
  construct->add_option("--threshold", construct_args.threshold,
                        "Acceptance cut (default: 1/(2s))");
  construct->add_option("--out", construct_args.out_path, "Matrix output path")->required();
  construct->add_option("--report", construct_args.report_path, "Report JSON path")->required();

  AnalyzeArgs analyze_args;
  long analyze_s = 0;
  CLI::App* analyze = app.add_subcommand("analyze", "Coherence and recovery diagnostics");
  analyze->add_option("--matrix", analyze_args.matrix_path, "Matrix file")->required();
  CLI::Option* analyze_s_opt = analyze->add_option("--s", analyze_s, "Check mu < 1/(2s-1)");

  BoundsArgs bounds_args;
  long bounds_m = 0;
  CLI::App* bounds = app.add_subcommand("bounds", "Closed-form bounds and inequality chain");
  bounds->add_option("--s", bounds_args.s, "Target sparsity")->required();
  bounds->add_option("--N", bounds_args.n, "Number of columns")->required();
  CLI::Option* bounds_m_opt = bounds->add_option("--m", bounds_m, "Rows (default: sizing rule)");
  bounds->add_flag("--csv", bounds_args.csv, "Emit a flat CSV row instead of JSON");

  RecoverArgs recover_args;
  CLI::App* recover = app.add_subcommand("recover", "Random s-sparse recovery experiment");
  recover->add_option("--matrix", recover_args.matrix_path, "Matrix file")->required();
  recover->add_option("--s", recover_args.s, "Planted sparsity")->required();
  recover->add_option("--trials", recover_args.trials, "Number of trials")->required();
  recover->add_option("--seed", recover_args.seed, "Master seed")->required();
  recover->add_flag("--csv", recover_args.csv, "Emit a flat CSV row instead of JSON");

  MonteCarloArgs mc_args;
  CLI::App* montecarlo = app.add_subcommand("montecarlo", "Spherical cap measure by sampling");
  montecarlo->add_option("--m", mc_args.m, "Ambient dimension")->required();
  montecarlo->add_option("--t", mc_args.t, "Cap threshold in (0, 1)")->required();
  montecarlo->add_option("--samples", mc_args.samples, "Sample count (>= 1000)")->required();
  montecarlo->add_option("--seed", mc_args.seed, "Seed")->required();

  RicArgs ric_args;
  CLI::App* ric = app.add_subcommand("ric", "Brute-force restricted isometry constant");
  ric->add_option("--matrix", ric_args.matrix_path, "Matrix file")->required();
  ric->add_option("--s", ric_args.s, "Isometry order")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the usage error
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*analyze_s_opt) analyze_args.s = analyze_s;
  if (*bounds_m_opt) bounds_args.m = bounds_m;

  try {
    if (*construct) return run_construct(construct_args, command_line);
    if (*analyze) return run_analyze(analyze_args, command_line);
    if (*bounds) return run_bounds(bounds_args, command_line);
    if (*recover) return run_recover(recover_args, command_line);
    if (*montecarlo) return run_montecarlo(mc_args, command_line);
    if (*ric) return run_ric(ric_args, command_line);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;  // unreachable with require_subcommand(1)
}
