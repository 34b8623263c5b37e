#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "smaa/types.hpp"

//! Dense linear programming engine.
//!
//! A self-contained two-phase simplex over Eigen matrices.  Pivoting is
//! deterministic: Dantzig pricing with lowest-index tie-breaks, switching to
//! Bland's rule after a degenerate stall, so the same program always produces
//! the same outcome.  Every optimal solution is re-audited against the original
//! rows; drift beyond the audit tolerance is reported as a numerical failure
//! rather than returned as an answer.
namespace smaa {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

enum class Relation { LE, GE, EQ };

struct LinearProgram {
  bool maximize = true;
  Vector objective;                    // one coefficient per variable
  Matrix rows;                         // dense constraint rows
  Vector rhs;
  std::vector<Relation> relations;     // one per row
  Vector lower;                        // per-variable lower bound; kNegInf = free
  std::vector<std::string> row_names;  // optional, for dump()

  Index variables() const { return objective.size(); }
  Index row_count() const { return rows.rows(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

struct LpOutcome {
  LpStatus status = LpStatus::NumericalFailure;
  double objective = std::numeric_limits<double>::quiet_NaN();
  Vector solution;      // populated when status == Optimal
  std::string message;  // diagnostic on numerical failure
};

//! Solves the program; outcome.solution satisfies every row within the audit
//! tolerance when status is Optimal.
LpOutcome solve(const LinearProgram& lp);

//! Human-readable rendering of a program for debugging.
std::string dump(const LinearProgram& lp);

//! Maximal violation of the program's rows and bounds at x.
double max_violation(const LinearProgram& lp, const Vector& x);

// ---- weight-space compatibility ---------------------------------------------

//! One linear row over weight space derived from a certain statement; rows with
//! with_margin set require coeffs . w >= margin, others hold with equality.
struct WeightRow {
  Vector coeffs;
  bool equality = false;     // true: coeffs . w == 0
  bool with_margin = false;  // true: coeffs . w >= epsilon
  std::string name;
};

//! Expands certain statements into weight-space rows: strict preferences and
//! intensity comparisons carry an epsilon margin, indifferences are equalities.
std::vector<WeightRow> certain_rows(const PerformanceMatrix& perf, const PreferenceInfo& prefs);

struct CompatibilityResult {
  double epsilon_star = std::numeric_limits<double>::quiet_NaN();
  bool compatible = false;
  std::optional<Vector> weights;  // maximizing weight vector when the LP solved
  LpStatus status = LpStatus::NumericalFailure;
  PreferenceInfo statements;      // the certain statements that were tested, verbatim
};

//! Maximizes the discrimination margin epsilon over the weight simplex subject
//! to the certain statements.  compatible is true when epsilon* exceeds the
//! cutoff; the maximizing weight vector is the most discriminant model.
CompatibilityResult compatibility_check(const PerformanceMatrix& perf, const PreferenceInfo& prefs,
                                        double cutoff = tol::compatibility);

}  // namespace smaa
