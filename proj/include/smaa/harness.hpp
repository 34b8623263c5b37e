#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smaa/dm.hpp"
#include "smaa/inference.hpp"
#include "smaa/stats.hpp"
#include "smaa/types.hpp"

//! Simulation harness: repeated runs of the generate-elicit-infer-score
//! pipeline against an artificial decision maker, with per-method aggregates,
//! sequential Kolmogorov-Smirnov decision tables, and CSV/JSONL reporting.
namespace smaa {

// ---- method descriptors --------------------------------------------------------

enum class MethodKind { Uniform, Logistic, Ssor, Acg, AcgPl, AcgNl };

const char* to_string(MethodKind kind);
MethodKind method_kind_from_string(const std::string& text);

//! One column of the experiment: a method plus, for the reference-anchored
//! methods, the reference model it uses.  Text form is "kind" or
//! "kind:reference" ("acg_nl:most_discriminant"); a reference of "neighbor<k>"
//! (k in 1..9) stands for the k-th closest of the sampled neighbors of the
//! barycenter, drawn per run from the box of half-width 0.05 around it
//! intersected with the simplex.
struct MethodDescriptor {
  MethodKind method = MethodKind::Uniform;
  ReferenceKind reference = ReferenceKind::Barycenter;
  Index neighbor_rank = 0;  // 0 = use `reference`, k >= 1 = k-th nearest neighbor

  std::string name() const;
};

MethodDescriptor method_descriptor_from_string(const std::string& text);

// ---- configuration ----------------------------------------------------------------

inline constexpr Index kNeighborKeep = 9;  // sampled vectors nearest the reference

struct ExperimentConfig {
  Index m = 8, n = 4, z = 4;
  DmKind dm = DmKind::Delta;                // lambda is redrawn per run in the kind's range
  std::vector<MethodDescriptor> methods;    // non-empty
  Index runs = 200;
  Index omega_size = 1000;
  Index dist_samples = 1000;
  std::uint64_t seed = 1;
  Index s = kRaiDistanceColumns;            // top ranks scored by the rank-index distance
  Index pl_breakpoints = 3;                 // equally spaced breakpoints for acg_pl
  Index workers = 1;                        // concurrent runs; 0 = hardware count
  std::string output_dir = "out";
};

//! Throws std::invalid_argument on structural problems (no methods, z larger
//! than the number of unordered pairs, non-positive counts, ...).
void check_config(const ExperimentConfig& cfg);

//! Canonical key-value text; config_from_text(config_to_text(cfg)) echoes the
//! same bytes back through config_to_text.
std::string config_to_text(const ExperimentConfig& cfg);

//! Parses "key = value" lines with '#' comments.  Unknown keys are rejected.
ExperimentConfig config_from_text(const std::string& text);

// ---- per-run records ----------------------------------------------------------------

struct MethodOutcome {
  std::string name;
  bool failed = false;      // the method threw; metrics are absent
  std::string error;

  bool has_rai = true;      // the logistic baseline yields pair probabilities only
  double rai_dist = 0.0;
  double pwi_dist = 0.0;
  double correct = 0.0;     // share of non-elicited pairs compared like the DM

  // method metadata
  bool compatible = true;
  bool has_epsilon = false;
  double epsilon_star = 0.0;
  bool sampled = false;
  bool is_parametric = false;
  Family family = Family::Exponential;
  double lambda = 0.0;
  bool lambda_at_boundary = false;
};

struct RunRecord {
  long run = 0;
  double dm_lambda = 0.0;
  std::vector<MethodOutcome> methods;  // one per configured descriptor, same order
};

//! Neighbor references for the reference-robustness study: the `keep` sampled
//! weight vectors nearest to `center`, as rows ordered by increasing Euclidean
//! distance (ties by sample index).
Matrix barycenter_neighbors(const OmegaSample& omega, const Vector& center, Index keep);

//! One-shot mass inference for a parsed descriptor.  Mass methods only
//! (ssor/acg/acg_pl/acg_nl); neighbor descriptors are rejected because their
//! reference exists only inside an experiment run.
MethodResult infer_masses(const MethodDescriptor& desc, const PerformanceMatrix& perf,
                          const OmegaSample& omega, const PreferenceInfo& prefs,
                          Index pl_breakpoints, const InferenceOptions& options, RngStream& rng);

//! One full pipeline pass: instance, hidden model, weight sample, artificial
//! DM masses and index matrices, elicitation, every configured method, and the
//! three metrics.  Per-method failures are recorded in the outcome, never
//! thrown.  Seeded by (cfg.seed, run_id); every stage draws from its own
//! substream.
RunRecord run_once(const ExperimentConfig& cfg, long run_id);

// ---- aggregation -----------------------------------------------------------------------

struct MetricSummary {
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation (n - 1)
  long count = 0;
};

struct MethodAggregate {
  std::string name;
  long failures = 0;
  long incompatible = 0;  // successful runs whose discrimination margin was not positive
  bool has_rai = true;
  MetricSummary rai_dist, pwi_dist, correct;
  std::vector<double> rai_samples, pwi_samples, correct_samples;  // in run order
};

struct ExperimentReport {
  ExperimentConfig cfg;
  std::vector<RunRecord> runs;
  std::vector<MethodAggregate> methods;
  KsTable ks_rai, ks_pwi, ks_correct;  // methods with no samples are left out
};

//! Executes cfg.runs independent runs (concurrently when cfg.workers allows)
//! and aggregates in run order, so the report is a pure function of the
//! configuration regardless of scheduling.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

//! Writes config.txt, summary_<metric>.csv, summary_feasibility.csv,
//! ks_<metric>_<variant>.csv, and runs.jsonl under dir (created if needed).
void write_report(const ExperimentReport& report, const std::string& dir);

// ---- sensitivity suites ---------------------------------------------------------------

enum class SuiteKind { ReferenceModels, BarycenterNeighborhood, Configurations, ZSweep };

const char* to_string(SuiteKind kind);
SuiteKind suite_kind_from_string(const std::string& text);

struct SuiteReport {
  std::string label;  // subdirectory name, e.g. "dm_normal", "m5_n3", "z19"
  ExperimentReport report;
};

//! Derives the suite's experiments from the base configuration:
//!  - ReferenceModels: one experiment per DM distribution kind, methods =
//!    uniform + the piecewise-linear and parametric methods across their
//!    admissible reference models;
//!  - BarycenterNeighborhood: one experiment; both distance-anchored methods
//!    with the barycenter and each of its nine sampled nearest neighbors;
//!  - Configurations: one experiment per (m, n) in (5,3), (8,4), (12,6);
//!  - ZSweep: one experiment per z in {4, 9, 14, 19, 25}.
std::vector<SuiteReport> sensitivity_suite(SuiteKind kind, const ExperimentConfig& base);

//! Writes each report under dir/<label>/ plus suite-level overview CSVs
//! (e.g. the piecewise-linear infeasibility percentage per z).
void write_suite(SuiteKind kind, const std::vector<SuiteReport>& reports, const std::string& dir);

}  // namespace smaa
