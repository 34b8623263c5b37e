#include "smaa/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "smaa/baselines.hpp"
#include "smaa/core.hpp"
#include "smaa/indices.hpp"
#include "smaa/io.hpp"
#include "smaa/polytope.hpp"

namespace smaa {

// ---- names ---------------------------------------------------------------------

const char* to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::Uniform: return "uniform";
    case MethodKind::Logistic: return "logistic";
    case MethodKind::Ssor: return "ssor";
    case MethodKind::Acg: return "acg";
    case MethodKind::AcgPl: return "acg_pl";
    case MethodKind::AcgNl: return "acg_nl";
  }
  throw std::invalid_argument("unknown method kind");
}

MethodKind method_kind_from_string(const std::string& text) {
  if (text == "uniform") return MethodKind::Uniform;
  if (text == "logistic") return MethodKind::Logistic;
  if (text == "ssor") return MethodKind::Ssor;
  if (text == "acg") return MethodKind::Acg;
  if (text == "acg_pl") return MethodKind::AcgPl;
  if (text == "acg_nl") return MethodKind::AcgNl;
  throw std::invalid_argument("unknown method kind: " + text);
}

const char* to_string(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::ReferenceModels: return "reference-models";
    case SuiteKind::BarycenterNeighborhood: return "barycenter-neighborhood";
    case SuiteKind::Configurations: return "configurations";
    case SuiteKind::ZSweep: return "z-sweep";
  }
  throw std::invalid_argument("unknown suite kind");
}

SuiteKind suite_kind_from_string(const std::string& text) {
  if (text == "reference-models") return SuiteKind::ReferenceModels;
  if (text == "barycenter-neighborhood") return SuiteKind::BarycenterNeighborhood;
  if (text == "configurations") return SuiteKind::Configurations;
  if (text == "z-sweep") return SuiteKind::ZSweep;
  throw std::invalid_argument("unknown suite kind: " + text);
}

namespace {

bool anchored(MethodKind kind) {
  return kind == MethodKind::Acg || kind == MethodKind::AcgPl || kind == MethodKind::AcgNl;
}

std::string trimmed(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const std::size_t last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

long parse_count(const std::string& text, const std::string& key) {
  long value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  const std::from_chars_result res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last)
    throw std::invalid_argument("config: " + key + " must be an integer, got '" + text + "'");
  return value;
}

}  // namespace

std::string MethodDescriptor::name() const {
  std::string base = to_string(method);
  if (!anchored(method)) return base;
  if (neighbor_rank > 0) return base + ":neighbor" + std::to_string(neighbor_rank);
  return base + ":" + to_string(reference);
}

MethodDescriptor method_descriptor_from_string(const std::string& text) {
  const std::string token = trimmed(text);
  const std::size_t colon = token.find(':');
  MethodDescriptor desc;
  desc.method = method_kind_from_string(colon == std::string::npos ? token : token.substr(0, colon));
  if (!anchored(desc.method)) {
    if (colon != std::string::npos)
      throw std::invalid_argument("method " + token.substr(0, colon) + " takes no reference model");
    return desc;
  }
  if (colon == std::string::npos) return desc;  // barycenter by default
  const std::string ref = token.substr(colon + 1);
  if (ref.rfind("neighbor", 0) == 0) {
    const long k = parse_count(ref.substr(8), "neighbor rank");
    if (k < 1 || k > kNeighborKeep)
      throw std::invalid_argument("neighbor rank must lie in [1, " +
                                  std::to_string(kNeighborKeep) + "]");
    desc.neighbor_rank = k;
    return desc;
  }
  desc.reference = reference_kind_from_string(ref);
  if (desc.method != MethodKind::AcgNl && (desc.reference == ReferenceKind::ConvexCombination ||
                                           desc.reference == ReferenceKind::Unknown))
    throw std::invalid_argument("method " + std::string(to_string(desc.method)) +
                                " needs a resolved reference model, not " + ref);
  return desc;
}

// ---- configuration --------------------------------------------------------------

void check_config(const ExperimentConfig& cfg) {
  if (cfg.m < 2) throw std::invalid_argument("config: need at least two alternatives");
  if (cfg.n < 2) throw std::invalid_argument("config: need at least two criteria");
  const Index max_pairs = cfg.m * (cfg.m - 1) / 2;
  if (cfg.z < 0 || cfg.z > max_pairs)
    throw std::invalid_argument("config: z must lie in [0, m(m-1)/2] = [0, " +
                                std::to_string(max_pairs) + "]");
  if (cfg.methods.empty()) throw std::invalid_argument("config: methods must be non-empty");
  std::set<std::string> names;
  for (const MethodDescriptor& desc : cfg.methods) {
    if (desc.neighbor_rank < 0 || desc.neighbor_rank > kNeighborKeep)
      throw std::invalid_argument("config: neighbor rank outside [0, " +
                                  std::to_string(kNeighborKeep) + "]");
    if (desc.neighbor_rank > 0 && !anchored(desc.method))
      throw std::invalid_argument("config: neighbor references need a reference-anchored method");
    if (desc.method != MethodKind::AcgNl && anchored(desc.method) && desc.neighbor_rank == 0 &&
        (desc.reference == ReferenceKind::ConvexCombination ||
         desc.reference == ReferenceKind::Unknown))
      throw std::invalid_argument("config: " + desc.name() + " needs a resolved reference model");
    if (!names.insert(desc.name()).second)
      throw std::invalid_argument("config: duplicate method " + desc.name());
  }
  if (cfg.runs < 1) throw std::invalid_argument("config: runs must be positive");
  if (cfg.omega_size < 2) throw std::invalid_argument("config: omega_size must be at least 2");
  if (cfg.dm == DmKind::Roc && cfg.omega_size < static_cast<Index>(dm_lambda_range(DmKind::Roc).lo))
    throw std::invalid_argument("config: the roc distribution needs omega_size >= " +
                                std::to_string(static_cast<long>(dm_lambda_range(DmKind::Roc).lo)));
  if (cfg.dist_samples < 1) throw std::invalid_argument("config: dist_samples must be positive");
  if (cfg.s < 1 || cfg.s > cfg.m)
    throw std::invalid_argument("config: s must lie in [1, m]");
  if (cfg.pl_breakpoints < 2)
    throw std::invalid_argument("config: pl_breakpoints must be at least 2");
  if (cfg.workers < 0) throw std::invalid_argument("config: workers must be non-negative");
  if (cfg.output_dir.empty()) throw std::invalid_argument("config: output_dir must be non-empty");
}

std::string config_to_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "m = " << cfg.m << "\n";
  out << "n = " << cfg.n << "\n";
  out << "z = " << cfg.z << "\n";
  out << "dm = " << to_string(cfg.dm) << "\n";
  out << "methods = ";
  for (std::size_t i = 0; i < cfg.methods.size(); ++i)
    out << (i ? ", " : "") << cfg.methods[i].name();
  out << "\n";
  out << "runs = " << cfg.runs << "\n";
  out << "omega_size = " << cfg.omega_size << "\n";
  out << "dist_samples = " << cfg.dist_samples << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "s = " << cfg.s << "\n";
  out << "pl_breakpoints = " << cfg.pl_breakpoints << "\n";
  out << "workers = " << cfg.workers << "\n";
  out << "output_dir = " << cfg.output_dir << "\n";
  return out.str();
}

ExperimentConfig config_from_text(const std::string& text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t mark = line.find('#');
    if (mark != std::string::npos) line.erase(mark);
    if (trimmed(line).empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected 'key = value', got '" + trimmed(line) + "'");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (!seen.insert(key).second) throw std::invalid_argument("config: duplicate key " + key);
    if (key == "m") cfg.m = parse_count(value, key);
    else if (key == "n") cfg.n = parse_count(value, key);
    else if (key == "z") cfg.z = parse_count(value, key);
    else if (key == "dm") cfg.dm = dm_kind_from_string(value);
    else if (key == "methods") {
      cfg.methods.clear();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ','))
        cfg.methods.push_back(method_descriptor_from_string(item));
    } else if (key == "runs") cfg.runs = parse_count(value, key);
    else if (key == "omega_size") cfg.omega_size = parse_count(value, key);
    else if (key == "dist_samples") cfg.dist_samples = parse_count(value, key);
    else if (key == "seed") {
      std::uint64_t seed = 0;
      const std::from_chars_result res =
          std::from_chars(value.data(), value.data() + value.size(), seed);
      if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        throw std::invalid_argument("config: seed must be a non-negative integer");
      cfg.seed = seed;
    } else if (key == "s") cfg.s = parse_count(value, key);
    else if (key == "pl_breakpoints") cfg.pl_breakpoints = parse_count(value, key);
    else if (key == "workers") cfg.workers = parse_count(value, key);
    else if (key == "output_dir") cfg.output_dir = value;
    else throw std::invalid_argument("config: unknown key " + key);
  }
  check_config(cfg);
  return cfg;
}

// ---- one run -----------------------------------------------------------------------

namespace {

// Stage tags for the per-run substreams.
constexpr std::uint64_t kStageMatrix = 0xA1;
constexpr std::uint64_t kStageReference = 0xA2;
constexpr std::uint64_t kStageOmega = 0xA3;
constexpr std::uint64_t kStageDmLambda = 0xA4;
constexpr std::uint64_t kStageMethodBase = 0x1000;

double draw_dm_lambda(DmKind kind, Index omega_size, RngStream& rng) {
  if (kind == DmKind::Delta) return 0.0;
  const LambdaRange range = dm_lambda_range(kind);
  double hi = range.hi;
  if (kind == DmKind::Roc) hi = std::min(hi, static_cast<double>(omega_size));
  if (range.integer)
    return static_cast<double>(rng.uniform_int(static_cast<long>(range.lo), static_cast<long>(hi)));
  return rng.uniform(range.lo, hi);
}

MethodResult apply_anchored(MethodKind kind, const PerformanceMatrix& perf,
                            const OmegaSample& omega, const PreferenceInfo& prefs,
                            const ReferenceModel& ref, Index pl_breakpoints,
                            const InferenceOptions& options, RngStream& rng) {
  switch (kind) {
    case MethodKind::Acg: return acg(perf, omega, prefs, ref, options, rng);
    case MethodKind::AcgPl: return acg_pl(perf, omega, prefs, ref, pl_breakpoints, options, rng);
    case MethodKind::AcgNl: return acg_nl(perf, omega, prefs, ref, options);
    default: throw std::invalid_argument("not a reference-anchored method");
  }
}

}  // namespace

Matrix barycenter_neighbors(const OmegaSample& omega, const Vector& center, Index keep) {
  if (keep < 1) throw std::invalid_argument("barycenter neighbors: need keep >= 1");
  if (omega.size() < keep)
    throw std::invalid_argument("barycenter neighbors: sample smaller than keep");
  if (center.size() != omega.dimension())
    throw std::invalid_argument("barycenter neighbors: dimension mismatch");
  std::vector<Index> order(static_cast<std::size_t>(omega.size()));
  std::iota(order.begin(), order.end(), 0);
  const Vector dist = distance_profile(omega, center);
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return dist(a) < dist(b); });
  Matrix out(keep, omega.dimension());
  for (Index k = 0; k < keep; ++k) out.row(k) = omega.point(order[static_cast<std::size_t>(k)]);
  return out;
}

MethodResult infer_masses(const MethodDescriptor& desc, const PerformanceMatrix& perf,
                          const OmegaSample& omega, const PreferenceInfo& prefs,
                          Index pl_breakpoints, const InferenceOptions& options, RngStream& rng) {
  if (desc.method == MethodKind::Uniform || desc.method == MethodKind::Logistic)
    throw std::invalid_argument(desc.name() + " is not a mass-inference method");
  if (desc.neighbor_rank > 0)
    throw std::invalid_argument("neighbor references are resolved per run inside the experiment");
  if (desc.method == MethodKind::Ssor) return ssor(perf, omega, prefs, options, rng);
  const ReferenceModel ref = resolve_reference(desc.reference, omega, perf, prefs);
  return apply_anchored(desc.method, perf, omega, prefs, ref, pl_breakpoints, options, rng);
}

RunRecord run_once(const ExperimentConfig& cfg, long run_id) {
  check_config(cfg);
  const RngStream root(mix_seed(cfg.seed, static_cast<std::uint64_t>(run_id)));

  RngStream matrix_rng = root.substream(kStageMatrix);
  const PerformanceMatrix perf = random_nondominated_matrix(cfg.m, cfg.n, matrix_rng);

  RngStream reference_rng = root.substream(kStageReference);
  const Vector u_ref = reference_rng.simplex_point(cfg.n);

  RngStream omega_rng = root.substream(kStageOmega);
  const SamplerConfig sampler;
  OmegaSample omega = sample_weight_space(perf, PreferenceInfo{}, cfg.omega_size, sampler, omega_rng);
  if (cfg.dm == DmKind::Delta) omega.append(u_ref);  // the point-mass model must be in the sample

  RunRecord record;
  record.run = run_id;
  RngStream lambda_rng = root.substream(kStageDmLambda);
  record.dm_lambda = draw_dm_lambda(cfg.dm, omega.size(), lambda_rng);

  const DmDistributionSpec dm_spec{cfg.dm, record.dm_lambda, u_ref};
  const MassDistribution dm_mass = dm_masses(dm_spec, omega);
  const Matrix rai_dm = rai(perf, omega, dm_mass);
  const Matrix pwi_dm = pwi(perf, omega, dm_mass);

  const Elicitation elicited = elicit_pairs(perf, omega, dm_mass, cfg.z);
  const PreferenceInfo prefs = elicited.to_preferences();

  Matrix neighbors;
  const bool need_neighbors =
      std::any_of(cfg.methods.begin(), cfg.methods.end(),
                  [](const MethodDescriptor& d) { return d.neighbor_rank > 0; });
  if (need_neighbors) {
    const ReferenceModel bar = resolve_reference(ReferenceKind::Barycenter, omega, perf, prefs);
    neighbors = barycenter_neighbors(omega, bar.weights, kNeighborKeep);
  }

  InferenceOptions options;
  options.dist_samples = cfg.dist_samples;
  options.sampler = sampler;

  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    const MethodDescriptor& desc = cfg.methods[i];
    MethodOutcome out;
    out.name = desc.name();
    RngStream method_rng = root.substream(kStageMethodBase + i);
    try {
      Matrix rai_method, pwi_method;
      if (desc.method == MethodKind::Uniform) {
        const MassDistribution mass = uniform_masses(omega);
        rai_method = rai(perf, omega, mass);
        pwi_method = pwi(perf, omega, mass);
      } else if (desc.method == MethodKind::Logistic) {
        std::vector<Pair> oriented;
        for (const ElicitedStatement& s : elicited.statements) {
          oriented.push_back({s.a, s.b});
          if (s.indifferent) oriented.push_back({s.b, s.a});
        }
        const LogisticModel model = fit_logistic(perf, oriented);
        pwi_method = logistic_pwi(model, perf);
        out.has_rai = false;  // pair probabilities only, no rank distribution
      } else {
        MethodResult res;
        if (desc.neighbor_rank > 0) {
          ReferenceModel ref;
          ref.kind = ReferenceKind::Barycenter;
          ref.dimension = omega.dimension();
          ref.weights = neighbors.row(desc.neighbor_rank - 1).transpose();
          res = apply_anchored(desc.method, perf, omega, prefs, ref, cfg.pl_breakpoints, options,
                               method_rng);
        } else {
          res = infer_masses(desc, perf, omega, prefs, cfg.pl_breakpoints, options, method_rng);
        }
        const MassDistribution mass = res.distribution();
        rai_method = rai(perf, omega, mass);
        pwi_method = pwi(perf, omega, mass);
        out.compatible = res.compatible;
        out.has_epsilon = res.has_epsilon;
        out.epsilon_star = res.epsilon_star;
        out.sampled = res.sampled;
        out.is_parametric = res.is_parametric;
        out.family = res.family;
        out.lambda = res.lambda;
        out.lambda_at_boundary = res.lambda_at_boundary;
      }
      if (out.has_rai) out.rai_dist = rai_distance(rai_dm, rai_method, cfg.s);
      out.pwi_dist = pwi_distance(pwi_dm, pwi_method);
      out.correct = correct_percentage(pwi_dm, pwi_method, elicited.pairs, perf.alternatives());
    } catch (const std::exception& e) {
      out.failed = true;
      out.error = e.what();
    }
    record.methods.push_back(std::move(out));
  }
  return record;
}

// ---- aggregation ---------------------------------------------------------------------

namespace {

MetricSummary summarize(const std::vector<double>& xs) {
  MetricSummary s;
  s.count = static_cast<long>(xs.size());
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

void aggregate(ExperimentReport& report) {
  const std::size_t n_methods = report.cfg.methods.size();
  report.methods.assign(n_methods, MethodAggregate{});
  for (std::size_t j = 0; j < n_methods; ++j) {
    MethodAggregate& agg = report.methods[j];
    agg.name = report.cfg.methods[j].name();
    agg.has_rai = report.cfg.methods[j].method != MethodKind::Logistic;
    for (const RunRecord& record : report.runs) {
      const MethodOutcome& out = record.methods[j];
      if (out.failed) {
        ++agg.failures;
        continue;
      }
      if ((out.has_epsilon || out.is_parametric) && !out.compatible) ++agg.incompatible;
      if (out.has_rai) agg.rai_samples.push_back(out.rai_dist);
      agg.pwi_samples.push_back(out.pwi_dist);
      agg.correct_samples.push_back(out.correct);
    }
    agg.rai_dist = summarize(agg.rai_samples);
    agg.pwi_dist = summarize(agg.pwi_samples);
    agg.correct = summarize(agg.correct_samples);
  }

  auto ks_over = [&](std::vector<double> MethodAggregate::* member) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> samples;
    for (const MethodAggregate& agg : report.methods) {
      if ((agg.*member).empty()) continue;
      names.push_back(agg.name);
      samples.push_back(agg.*member);
    }
    if (names.size() < 2) return KsTable{};  // nothing to compare against
    return sequential_ks(names, samples);
  };
  report.ks_rai = ks_over(&MethodAggregate::rai_samples);
  report.ks_pwi = ks_over(&MethodAggregate::pwi_samples);
  report.ks_correct = ks_over(&MethodAggregate::correct_samples);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  check_config(cfg);
  ExperimentReport report;
  report.cfg = cfg;
  report.runs.resize(static_cast<std::size_t>(cfg.runs));

  long workers = cfg.workers;
  if (workers == 0) workers = static_cast<long>(std::thread::hardware_concurrency());
  workers = std::max(1L, std::min(workers, static_cast<long>(cfg.runs)));

  if (workers == 1) {
    for (long id = 0; id < cfg.runs; ++id)
      report.runs[static_cast<std::size_t>(id)] = run_once(cfg, id);
  } else {
    std::atomic<long> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto body = [&]() {
      for (;;) {
        const long id = next.fetch_add(1);
        if (id >= cfg.runs) return;
        try {
          report.runs[static_cast<std::size_t>(id)] = run_once(cfg, id);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    for (long w = 0; w < workers; ++w) threads.emplace_back(body);
    for (std::thread& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }

  aggregate(report);
  return report;
}

// ---- reporting ------------------------------------------------------------------------

namespace {

using nlohmann::json;

json outcome_to_json(const MethodOutcome& out) {
  json j;
  j["name"] = out.name;
  j["failed"] = out.failed;
  if (out.failed) {
    j["error"] = out.error;
    return j;
  }
  if (out.has_rai) j["rai_distance"] = out.rai_dist;
  j["pwi_distance"] = out.pwi_dist;
  j["correct_pct"] = out.correct;
  if (out.has_epsilon || out.is_parametric) j["compatible"] = out.compatible;
  if (out.has_epsilon) {
    j["epsilon_star"] = out.epsilon_star;
    j["sampled"] = out.sampled;
  }
  if (out.is_parametric) {
    j["family"] = to_string(out.family);
    j["lambda"] = out.lambda;
    j["lambda_at_boundary"] = out.lambda_at_boundary;
  }
  return j;
}

void write_summary_csv(const std::string& path, const ExperimentReport& report,
                       MetricSummary MethodAggregate::* member, bool rai_only) {
  std::ostringstream out;
  out << "method,mean,std\n";
  for (const MethodAggregate& agg : report.methods) {
    if (rai_only && !agg.has_rai) continue;
    if ((agg.*member).count == 0) continue;
    out << agg.name << "," << format_double((agg.*member).mean) << ","
        << format_double((agg.*member).stdev) << "\n";
  }
  write_text_file(path, out.str());
}

void write_ks_pair(const std::string& dir, const std::string& metric, const KsTable& table) {
  std::ostringstream equal_out, greater_out;
  write_ks_equal_csv(equal_out, table);
  write_ks_greater_csv(greater_out, table);
  write_text_file(dir + "/ks_" + metric + "_equal.csv", equal_out.str());
  write_text_file(dir + "/ks_" + metric + "_greater.csv", greater_out.str());
}

double incompatible_pct(const MethodAggregate& agg) {
  const long succeeded = agg.pwi_dist.count;
  if (succeeded == 0) return 0.0;
  return 100.0 * static_cast<double>(agg.incompatible) / static_cast<double>(succeeded);
}

}  // namespace

void write_report(const ExperimentReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_text_file(dir + "/config.txt", config_to_text(report.cfg));

  write_summary_csv(dir + "/summary_rai_distance.csv", report, &MethodAggregate::rai_dist, true);
  write_summary_csv(dir + "/summary_pwi_distance.csv", report, &MethodAggregate::pwi_dist, false);
  write_summary_csv(dir + "/summary_correct_pct.csv", report, &MethodAggregate::correct, false);

  std::ostringstream feas;
  feas << "method,succeeded,failures,incompatible,incompatible_pct\n";
  for (const MethodAggregate& agg : report.methods)
    feas << agg.name << "," << agg.pwi_dist.count << "," << agg.failures << ","
         << agg.incompatible << "," << format_double(incompatible_pct(agg)) << "\n";
  write_text_file(dir + "/summary_feasibility.csv", feas.str());

  write_ks_pair(dir, "rai_distance", report.ks_rai);
  write_ks_pair(dir, "pwi_distance", report.ks_pwi);
  write_ks_pair(dir, "correct_pct", report.ks_correct);

  std::ostringstream lines;
  for (const RunRecord& record : report.runs) {
    json j;
    j["run"] = record.run;
    j["dm_lambda"] = record.dm_lambda;
    json methods = json::array();
    for (const MethodOutcome& out : record.methods) methods.push_back(outcome_to_json(out));
    j["methods"] = methods;
    lines << j.dump() << "\n";
  }
  write_text_file(dir + "/runs.jsonl", lines.str());
}

// ---- sensitivity suites ------------------------------------------------------------------

namespace {

std::vector<MethodDescriptor> parse_methods(const std::vector<std::string>& tokens) {
  std::vector<MethodDescriptor> methods;
  for (const std::string& token : tokens) methods.push_back(method_descriptor_from_string(token));
  return methods;
}

}  // namespace

std::vector<SuiteReport> sensitivity_suite(SuiteKind kind, const ExperimentConfig& base) {
  std::vector<SuiteReport> reports;
  switch (kind) {
    case SuiteKind::ReferenceModels: {
      const std::vector<MethodDescriptor> methods = parse_methods(
          {"uniform", "acg_pl:barycenter", "acg_pl:most_discriminant", "acg_pl:arithmetic_mean",
           "acg_nl:barycenter", "acg_nl:most_discriminant", "acg_nl:arithmetic_mean",
           "acg_nl:convex_combination", "acg_nl:unknown"});
      for (DmKind dm : {DmKind::Delta, DmKind::Normal, DmKind::Exponential,
                        DmKind::InverseDistance, DmKind::Roc}) {
        ExperimentConfig cfg = base;
        cfg.dm = dm;
        cfg.methods = methods;
        reports.push_back({std::string("dm_") + to_string(dm), run_experiment(cfg)});
      }
      break;
    }
    case SuiteKind::BarycenterNeighborhood: {
      std::vector<std::string> tokens = {"acg_pl:barycenter"};
      for (Index k = 1; k <= kNeighborKeep; ++k)
        tokens.push_back("acg_pl:neighbor" + std::to_string(k));
      tokens.push_back("acg_nl:barycenter");
      for (Index k = 1; k <= kNeighborKeep; ++k)
        tokens.push_back("acg_nl:neighbor" + std::to_string(k));
      ExperimentConfig cfg = base;
      cfg.methods = parse_methods(tokens);
      reports.push_back({"neighborhood", run_experiment(cfg)});
      break;
    }
    case SuiteKind::Configurations: {
      std::vector<std::string> tokens = {"uniform", "ssor"};
      if (base.dm == DmKind::Delta) tokens.push_back("logistic");
      tokens.insert(tokens.end(), {"acg:barycenter", "acg_pl:barycenter", "acg_nl:barycenter"});
      const std::vector<MethodDescriptor> methods = parse_methods(tokens);
      for (const auto& [m, n] : std::vector<std::pair<Index, Index>>{{5, 3}, {8, 4}, {12, 6}}) {
        ExperimentConfig cfg = base;
        cfg.m = m;
        cfg.n = n;
        cfg.methods = methods;
        reports.push_back({"m" + std::to_string(m) + "_n" + std::to_string(n),
                           run_experiment(cfg)});
      }
      break;
    }
    case SuiteKind::ZSweep: {
      std::vector<std::string> tokens = {"uniform"};
      if (base.dm == DmKind::Delta) tokens.push_back("logistic");
      tokens.insert(tokens.end(), {"acg_pl:barycenter", "acg_nl:barycenter"});
      const std::vector<MethodDescriptor> methods = parse_methods(tokens);
      for (Index z : {4, 9, 14, 19, 25}) {
        ExperimentConfig cfg = base;
        cfg.z = z;
        cfg.methods = methods;
        reports.push_back({"z" + std::to_string(z), run_experiment(cfg)});
      }
      break;
    }
  }
  return reports;
}

void write_suite(SuiteKind kind, const std::vector<SuiteReport>& reports, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const SuiteReport& r : reports) write_report(r.report, dir + "/" + r.label);

  if (kind == SuiteKind::ZSweep) {
    std::ostringstream out;
    out << "z,pl_incompatible_pct\n";
    for (const SuiteReport& r : reports)
      for (const MethodAggregate& agg : r.report.methods)
        if (agg.name == "acg_pl:barycenter")
          out << r.report.cfg.z << "," << format_double(incompatible_pct(agg)) << "\n";
    write_text_file(dir + "/pl_infeasibility.csv", out.str());
  }
}

}  // namespace smaa
