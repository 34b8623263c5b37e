#pragma once

#include <string>
#include <vector>

#include "smaa/core.hpp"
#include "smaa/lp.hpp"
#include "smaa/polytope.hpp"
#include "smaa/rng.hpp"
#include "smaa/types.hpp"

//! Inducing a probability distribution over the sampled weight vectors from
//! uncertain preference statements.
//!
//! Four methods: ssor (mass LP alone), acg (adds distance-ordering rows around
//! a reference model), acg_pl (piecewise-linear mass curve over breakpoint
//! distances), and acg_nl (best-fitting parametric kernel).  The LP-based
//! methods return the barycenter of sampled compatible distributions when the
//! margin is positive and the max-margin solution flagged incompatible
//! otherwise; the parametric method returns its optimizer directly.
namespace smaa {

// ---- reference models --------------------------------------------------------

enum class ReferenceKind { Barycenter, ArithmeticMean, MostDiscriminant, ConvexCombination, Unknown };

const char* to_string(ReferenceKind kind);
ReferenceKind reference_kind_from_string(const std::string& text);

//! A resolved reference carries concrete weights; ConvexCombination carries the
//! three base models it may mix, Unknown only the dimension — both are resolved
//! inside acg_nl's joint search and are rejected by acg / acg_pl.
struct ReferenceModel {
  ReferenceKind kind = ReferenceKind::Barycenter;
  Vector weights;    // resolved weight vector; empty while unresolved
  Matrix basis;      // ConvexCombination: rows = the three base weight vectors
  Index dimension = 0;

  bool resolved() const { return weights.size() > 0; }
};

//! Resolves a reference kind against an instance.  MostDiscriminant (and the
//! ConvexCombination basis that includes it) maximizes the discrimination
//! margin over the weight simplex, treating every elicited uncertain statement
//! as if it were certain; throws when those statements are incompatible.
ReferenceModel resolve_reference(ReferenceKind kind, const OmegaSample& omega,
                                 const PerformanceMatrix& perf, const PreferenceInfo& prefs);

// ---- method results ----------------------------------------------------------

enum class Family { Normal, Exponential };
const char* to_string(Family family);

struct FamilyOptimum {
  double lambda = 0.0;
  double objective = 0.0;
  bool at_boundary = false;  // optimum reported at lambda_max
  Vector reference;          // the reference weights this optimum was found at
};

struct MethodResult {
  std::string method;        // "ssor", "acg", "acg_pl", "acg_nl"
  bool compatible = true;
  bool sampled = false;      // true when masses are a barycenter of polytope draws
  double epsilon_star = 0.0;
  bool has_epsilon = false;  // LP-based methods only
  ReferenceKind reference_kind = ReferenceKind::Barycenter;
  Vector reference_weights;  // empty for ssor
  Vector masses;             // one mass per sampled weight vector, sums to 1

  // piecewise-linear extras
  Vector breakpoints;        // distances d_1 = 0 < ... < d_q = max distance
  Vector breakpoint_masses;  // mean sampled mass at each breakpoint

  // parametric extras
  bool is_parametric = false;
  Family family = Family::Exponential;
  double lambda = 0.0;
  bool lambda_at_boundary = false;
  Index agreement_count = 0;  // statements an admissible function must satisfy
  FamilyOptimum normal_optimum, exponential_optimum;

  Matrix draws;  // sampled distributions, one per row (only when kept)

  MassDistribution distribution() const { return MassDistribution(masses); }
};

struct InferenceOptions {
  Index dist_samples = 1000;      // barycenter sample count for the LP methods
  SamplerConfig sampler;          // hit-and-run controls
  double lambda_max = 1000.0;     // parametric search interval is [0, lambda_max]
  Index joint_budget = 5000;      // objective evaluations for unresolved references
  bool keep_draws = false;        // retain the sampled distributions in the result
};

// ---- statement rows over masses ----------------------------------------------

//! How accumulation sets treat exact utility ties.  StrictSets drops tied
//! functions from both sides; WeakSets counts them on each side it belongs to.
//! Plain preference rows coincide under both readings; intensity rows differ.
enum class RowConvention { StrictSets, WeakSets };

//! One linear row over the mass vector: coeffs . p >= margin, where margin is
//! epsilon for with_margin rows and 0 otherwise.
struct MassRow {
  Vector coeffs;
  bool with_margin = false;
  std::string name;
};

//! Expands uncertain statements into mass rows.  Strict preferences and
//! intensity comparisons carry the margin; an indifference becomes the two
//! opposite weak inequalities without margin.
std::vector<MassRow> statement_rows(const PerformanceMatrix& perf, const OmegaSample& omega,
                                    const PreferenceInfo& prefs, RowConvention convention);

// ---- the four methods ----------------------------------------------------------

MethodResult ssor(const PerformanceMatrix& perf, const OmegaSample& omega,
                  const PreferenceInfo& prefs, const InferenceOptions& options, RngStream& rng);

MethodResult acg(const PerformanceMatrix& perf, const OmegaSample& omega,
                 const PreferenceInfo& prefs, const ReferenceModel& ref,
                 const InferenceOptions& options, RngStream& rng);

//! q equally spaced breakpoints over [0, max distance].
MethodResult acg_pl(const PerformanceMatrix& perf, const OmegaSample& omega,
                    const PreferenceInfo& prefs, const ReferenceModel& ref, Index q,
                    const InferenceOptions& options, RngStream& rng);

//! Explicit breakpoints: first must be 0, last the maximal sample distance,
//! strictly increasing.
MethodResult acg_pl(const PerformanceMatrix& perf, const OmegaSample& omega,
                    const PreferenceInfo& prefs, const ReferenceModel& ref,
                    const Vector& breakpoints, const InferenceOptions& options, RngStream& rng);

//! Parametric fit.  Deterministic: no sampling is involved.  For unresolved
//! reference kinds the kernel rate and the reference parameters are optimized
//! jointly by direct search within options.joint_budget evaluations.
MethodResult acg_nl(const PerformanceMatrix& perf, const OmegaSample& omega,
                    const PreferenceInfo& prefs, const ReferenceModel& ref,
                    const InferenceOptions& options);

}  // namespace smaa
