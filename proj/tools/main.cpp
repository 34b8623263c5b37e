#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "smaa/baselines.hpp"
#include "smaa/harness.hpp"
#include "smaa/indices.hpp"
#include "smaa/io.hpp"
#include "smaa/polytope.hpp"
#include "smaa/stats.hpp"

namespace {

using namespace smaa;

// Exit codes: 0 success, 1 configuration/input error, 2 runtime failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void print_summary(std::ostream& out, const ExperimentReport& report) {
  auto table = [&](const char* title, MetricSummary MethodAggregate::* member, bool rai_only) {
    out << title << "\n";
    out << "  " << std::left << std::setw(32) << "method" << std::right << std::setw(12) << "mean"
        << std::setw(12) << "std" << "\n";
    for (const MethodAggregate& agg : report.methods) {
      if (rai_only && !agg.has_rai) continue;
      if ((agg.*member).count == 0) continue;
      out << "  " << std::left << std::setw(32) << agg.name << std::right << std::fixed
          << std::setprecision(4) << std::setw(12) << (agg.*member).mean << std::setw(12)
          << (agg.*member).stdev << "\n";
    }
    out.unsetf(std::ios::fixed);
  };
  table("rai_distance", &MethodAggregate::rai_dist, true);
  table("pwi_distance", &MethodAggregate::pwi_dist, false);
  table("correct_pct", &MethodAggregate::correct, false);
  bool any_failures = false;
  for (const MethodAggregate& agg : report.methods)
    if (agg.failures > 0) {
      if (!any_failures) out << "failures:\n";
      any_failures = true;
      out << "  " << agg.name << ": " << agg.failures << " of " << report.cfg.runs << " runs\n";
    }
}

PerformanceMatrix load_performance(const std::string& path) {
  std::istringstream in(read_text_file(path));
  return read_performance_csv(in);
}

OmegaSample load_omega(const std::string& path) {
  std::istringstream in(read_text_file(path));
  return read_omega_csv(in);
}

int run_simulate(const std::string& config_path, const std::string& out_override) {
  ExperimentConfig cfg;
  try {
    cfg = config_from_text(read_text_file(config_path));
    if (!out_override.empty()) cfg.output_dir = out_override;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const ExperimentReport report = run_experiment(cfg);
    write_report(report, cfg.output_dir);
    print_summary(std::cout, report);
    std::cout << "report written to " << cfg.output_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run_sensitivity(const std::string& config_path, const std::string& kind_text,
                    const std::string& out_override) {
  ExperimentConfig cfg;
  SuiteKind kind;
  try {
    cfg = config_from_text(read_text_file(config_path));
    if (!out_override.empty()) cfg.output_dir = out_override;
    kind = suite_kind_from_string(kind_text);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const std::vector<SuiteReport> reports = sensitivity_suite(kind, cfg);
    write_suite(kind, reports, cfg.output_dir);
    for (const SuiteReport& r : reports) {
      std::cout << "=== " << r.label << " ===\n";
      print_summary(std::cout, r.report);
    }
    std::cout << "suite written to " << cfg.output_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run_infer(const std::string& perf_path, const std::string& prefs_path,
              const std::string& method_text, const std::string& omega_path, long omega_size,
              long dist_samples, long pl_breakpoints, std::uint64_t seed,
              const std::string& out_dir) {
  PerformanceMatrix perf(Matrix::Identity(2, 2));
  PreferenceInfo prefs;
  MethodDescriptor desc;
  try {
    perf = load_performance(perf_path);
    std::istringstream pref_in(read_text_file(prefs_path));
    prefs = read_preferences(pref_in, perf);
    desc = method_descriptor_from_string(method_text);
    if (desc.method == MethodKind::Uniform || desc.method == MethodKind::Logistic ||
        desc.neighbor_rank > 0)
      throw std::invalid_argument("--method must name a mass-inference method "
                                  "(ssor, acg[:ref], acg_pl[:ref], acg_nl[:ref])");
    if (omega_size < 2) throw std::invalid_argument("--omega-size must be at least 2");
    if (dist_samples < 1) throw std::invalid_argument("--dist-samples must be positive");
    if (pl_breakpoints < 2) throw std::invalid_argument("--pl-breakpoints must be at least 2");
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    RngStream rng(seed);
    const OmegaSample omega =
        omega_path.empty()
            ? sample_weight_space(perf, prefs, omega_size, SamplerConfig{}, rng)
            : load_omega(omega_path);
    InferenceOptions options;
    options.dist_samples = dist_samples;
    const MethodResult result =
        infer_masses(desc, perf, omega, prefs, pl_breakpoints, options, rng);

    std::filesystem::create_directories(out_dir);
    const MassDistribution mass = result.distribution();
    std::ostringstream masses_out, omega_out, rai_out, pwi_out;
    write_masses_csv(masses_out, result.masses);
    write_omega_csv(omega_out, omega);
    write_rai_csv(rai_out, perf, rai(perf, omega, mass));
    write_pwi_csv(pwi_out, perf, pwi(perf, omega, mass));
    write_text_file(out_dir + "/masses.csv", masses_out.str());
    write_text_file(out_dir + "/omega.csv", omega_out.str());
    write_text_file(out_dir + "/rai.csv", rai_out.str());
    write_text_file(out_dir + "/pwi.csv", pwi_out.str());

    std::cout << "method " << desc.name() << ": compatible=" << (result.compatible ? "yes" : "no");
    if (result.has_epsilon) std::cout << " margin=" << format_double(result.epsilon_star);
    if (result.is_parametric)
      std::cout << " family=" << to_string(result.family)
                << " rate=" << format_double(result.lambda);
    std::cout << "\nresults written to " << out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run_indices(const std::string& perf_path, const std::string& omega_path,
                const std::string& masses_path, const std::string& out_dir) {
  PerformanceMatrix perf(Matrix::Identity(2, 2));
  Matrix omega_rows;
  Vector masses;
  try {
    perf = load_performance(perf_path);
    const OmegaSample omega = load_omega(omega_path);
    omega_rows = omega.rows();
    std::istringstream mass_in(read_text_file(masses_path));
    masses = read_masses_csv(mass_in);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const OmegaSample omega(omega_rows);
    const MassDistribution mass(masses);
    std::filesystem::create_directories(out_dir);
    std::ostringstream rai_out, pwi_out;
    write_rai_csv(rai_out, perf, rai(perf, omega, mass));
    write_pwi_csv(pwi_out, perf, pwi(perf, omega, mass));
    write_text_file(out_dir + "/rai.csv", rai_out.str());
    write_text_file(out_dir + "/pwi.csv", pwi_out.str());
    std::cout << "indices written to " << out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int run_kstest(const std::string& path1, const std::string& path2, const std::string& column,
               double alpha) {
  std::vector<double> sample1, sample2;
  try {
    std::istringstream in1(read_text_file(path1));
    sample1 = read_value_column_csv(in1, column);
    std::istringstream in2(read_text_file(path2));
    sample2 = read_value_column_csv(in2, column);
    if (sample1.empty() || sample2.empty())
      throw std::invalid_argument("both samples must be non-empty");
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("--alpha must lie in (0, 1)");
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const KsResult equal = ks_equal(sample1, sample2, alpha);
    const KsResult g12 = ks_greater(sample1, sample2, alpha);
    const KsResult g21 = ks_greater(sample2, sample1, alpha);
    std::cout << "equal:              h=" << equal.h << " D=" << format_double(equal.statistic)
              << " p=" << format_double(equal.p_value) << "\n";
    std::cout << "greater (1 over 2): h=" << g12.h << " D=" << format_double(g12.statistic)
              << " p=" << format_double(g12.p_value) << "\n";
    std::cout << "greater (2 over 1): h=" << g21.h << " D=" << format_double(g21.statistic)
              << " p=" << format_double(g21.p_value) << "\n";
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probability-mass inference over sampled preference models: batch "
               "simulation, sensitivity suites, and one-shot index computation"};
  app.require_subcommand(1);

  std::string config_path, out_override;
  CLI::App* simulate = app.add_subcommand("simulate", "Run the configured experiment");
  simulate->add_option("--config", config_path, "experiment config file")->required();
  simulate->add_option("--output", out_override, "override the configured output directory");

  std::string kind_text;
  CLI::App* sensitivity = app.add_subcommand("sensitivity", "Run a sensitivity suite");
  sensitivity->add_option("--config", config_path, "experiment config file")->required();
  sensitivity
      ->add_option("--kind", kind_text,
                   "reference-models | barycenter-neighborhood | configurations | z-sweep")
      ->required();
  sensitivity->add_option("--output", out_override, "override the configured output directory");

  std::string perf_path, prefs_path, omega_path, masses_path, out_dir;
  std::string method_text = "acg_nl:barycenter";
  long omega_size = 1000, dist_samples = 1000, pl_breakpoints = 3;
  std::uint64_t seed = 1;
  CLI::App* infer = app.add_subcommand("infer", "Infer masses for one instance");
  infer->add_option("--performance", perf_path, "performance matrix CSV")->required();
  infer->add_option("--preferences", prefs_path, "preference statements file")->required();
  infer->add_option("--method", method_text, "ssor | acg[:ref] | acg_pl[:ref] | acg_nl[:ref]");
  infer->add_option("--omega", omega_path, "weight sample CSV (sampled if omitted)");
  infer->add_option("--omega-size", omega_size, "sample size when --omega is omitted");
  infer->add_option("--dist-samples", dist_samples, "distribution draws for the barycenter");
  infer->add_option("--pl-breakpoints", pl_breakpoints, "breakpoint count for acg_pl");
  infer->add_option("--seed", seed, "random seed");
  infer->add_option("--out", out_dir, "output directory")->required();

  CLI::App* indices_cmd = app.add_subcommand("indices", "Index matrices for given masses");
  indices_cmd->add_option("--performance", perf_path, "performance matrix CSV")->required();
  indices_cmd->add_option("--omega", omega_path, "weight sample CSV")->required();
  indices_cmd->add_option("--masses", masses_path, "mass column CSV")->required();
  indices_cmd->add_option("--out", out_dir, "output directory")->required();

  std::string sample1_path, sample2_path, column = "value";
  double alpha = kKsAlphaDefault;
  CLI::App* kstest = app.add_subcommand("kstest", "Two-sample Kolmogorov-Smirnov tests");
  kstest->add_option("--sample1", sample1_path, "first sample CSV")->required();
  kstest->add_option("--sample2", sample2_path, "second sample CSV")->required();
  kstest->add_option("--column", column, "CSV column header (default: value)");
  kstest->add_option("--alpha", alpha, "significance level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (simulate->parsed()) return run_simulate(config_path, out_override);
  if (sensitivity->parsed()) return run_sensitivity(config_path, kind_text, out_override);
  if (infer->parsed())
    return run_infer(perf_path, prefs_path, method_text, omega_path, omega_size, dist_samples,
                     pl_breakpoints, seed, out_dir);
  if (indices_cmd->parsed()) return run_indices(perf_path, omega_path, masses_path, out_dir);
  if (kstest->parsed()) return run_kstest(sample1_path, sample2_path, column, alpha);
  return kExitConfig;
}
