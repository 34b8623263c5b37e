#include "smaa/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace smaa {

// ---- reference models --------------------------------------------------------

const char* to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::Barycenter: return "barycenter";
    case ReferenceKind::ArithmeticMean: return "arithmetic_mean";
    case ReferenceKind::MostDiscriminant: return "most_discriminant";
    case ReferenceKind::ConvexCombination: return "convex_combination";
    case ReferenceKind::Unknown: return "unknown";
  }
  throw std::invalid_argument("unknown reference kind");
}

ReferenceKind reference_kind_from_string(const std::string& text) {
  if (text == "barycenter") return ReferenceKind::Barycenter;
  if (text == "arithmetic_mean") return ReferenceKind::ArithmeticMean;
  if (text == "most_discriminant") return ReferenceKind::MostDiscriminant;
  if (text == "convex_combination") return ReferenceKind::ConvexCombination;
  if (text == "unknown") return ReferenceKind::Unknown;
  throw std::invalid_argument("unknown reference kind: " + text);
}

const char* to_string(Family family) {
  return family == Family::Normal ? "normal" : "exponential";
}

namespace {

// the discrimination-margin maximizer over the weight simplex, with elicited
// uncertain statements promoted to certain ones
Vector most_discriminant_weights(const PerformanceMatrix& perf, const PreferenceInfo& prefs) {
  PreferenceInfo certain;
  certain.certain_strict = prefs.certain_strict;
  certain.certain_indiff = prefs.certain_indiff;
  certain.certain_intensity = prefs.certain_intensity;
  certain.certain_strict.insert(certain.certain_strict.end(), prefs.uncertain_strict.begin(),
                                prefs.uncertain_strict.end());
  certain.certain_indiff.insert(certain.certain_indiff.end(), prefs.uncertain_indiff.begin(),
                                prefs.uncertain_indiff.end());
  for (const Quad& q : prefs.uncertain_intensity) certain.certain_intensity.push_back(q);
  CompatibilityResult check = compatibility_check(perf, certain);
  if (!check.compatible || !check.weights)
    throw std::runtime_error("most discriminant reference: statements are incompatible");
  return *check.weights;
}

// weak pairwise statements that define admissibility: strict preferences as
// given, indifferences in both directions; intensity statements do not
// constrain individual functions and are left out
std::vector<Pair> weak_statements(const PreferenceInfo& prefs) {
  std::vector<Pair> weak = prefs.uncertain_strict;
  for (const Pair& p : prefs.uncertain_indiff) {
    weak.push_back(p);
    weak.push_back({p.second, p.first});
  }
  return weak;
}

// membership flags for the largest non-empty agreement set: functions weakly
// agreeing with at least k statements, k as large as possible
std::vector<char> admissible_set(const Matrix& util, const std::vector<Pair>& weak,
                                 Index* k_used) {
  const Index n_points = util.cols();
  const Index s = static_cast<Index>(weak.size());
  std::vector<Index> satisfied(static_cast<std::size_t>(n_points), 0);
  for (Index t = 0; t < n_points; ++t)
    for (const Pair& p : weak)
      if (util(p.first, t) - util(p.second, t) >= -tol::utility_tie)
        ++satisfied[static_cast<std::size_t>(t)];
  for (Index k = s; k >= 0; --k) {
    std::vector<char> in(static_cast<std::size_t>(n_points), 0);
    bool any = false;
    for (Index t = 0; t < n_points; ++t)
      if (satisfied[static_cast<std::size_t>(t)] >= k) {
        in[static_cast<std::size_t>(t)] = 1;
        any = true;
      }
    if (any) {
      *k_used = k;
      return in;
    }
  }
  throw std::logic_error("admissible_set: unreachable");  // k = 0 always matches
}

// barycenter of the part of the sample compatible with the statements: the
// elicited directions carve an agreement region out of the sampled space and
// the reference is the mean of the sampled functions inside it (largest
// agreement set when no function satisfies every statement); without
// statements it degrades to the plain sample barycenter
Vector compatible_barycenter(const OmegaSample& omega, const PerformanceMatrix& perf,
                             const PreferenceInfo& prefs) {
  const std::vector<Pair> weak = weak_statements(prefs);
  if (weak.empty()) return barycenter(omega);
  const Matrix util = utilities(perf, omega);
  Index k_used = 0;
  const std::vector<char> in_b = admissible_set(util, weak, &k_used);
  Vector mean = Vector::Zero(omega.dimension());
  double count = 0.0;
  for (Index t = 0; t < omega.size(); ++t)
    if (in_b[static_cast<std::size_t>(t)]) {
      mean += omega.point(t);
      count += 1.0;
    }
  return mean / count;
}

}  // namespace

ReferenceModel resolve_reference(ReferenceKind kind, const OmegaSample& omega,
                                 const PerformanceMatrix& perf, const PreferenceInfo& prefs) {
  ReferenceModel ref;
  ref.kind = kind;
  ref.dimension = omega.dimension();
  switch (kind) {
    case ReferenceKind::Barycenter:
      ref.weights = compatible_barycenter(omega, perf, prefs);
      break;
    case ReferenceKind::ArithmeticMean:
      ref.weights = Vector::Constant(omega.dimension(), 1.0 / static_cast<double>(omega.dimension()));
      break;
    case ReferenceKind::MostDiscriminant:
      ref.weights = most_discriminant_weights(perf, prefs);
      break;
    case ReferenceKind::ConvexCombination: {
      ref.basis = Matrix(3, omega.dimension());
      ref.basis.row(0) = compatible_barycenter(omega, perf, prefs).transpose();
      ref.basis.row(1) = Vector::Constant(omega.dimension(),
                                          1.0 / static_cast<double>(omega.dimension())).transpose();
      ref.basis.row(2) = most_discriminant_weights(perf, prefs).transpose();
      break;  // weights stay empty: mixed inside acg_nl
    }
    case ReferenceKind::Unknown:
      break;  // weights stay empty: searched inside acg_nl
  }
  return ref;
}

// ---- statement rows ------------------------------------------------------------

std::vector<MassRow> statement_rows(const PerformanceMatrix& perf, const OmegaSample& omega,
                                    const PreferenceInfo& prefs, RowConvention convention) {
  check_preferences(prefs, perf.alternatives());
  const Matrix util = utilities(perf, omega);  // m x N
  const Index n_points = omega.size();
  const bool weak = convention == RowConvention::WeakSets;

  // +1 when the function puts a above b, -1 below, ties resolved per convention
  auto pair_sign = [&](Index a, Index b, Index t) -> double {
    const double gap = util(a, t) - util(b, t);
    if (gap > tol::utility_tie) return 1.0;
    if (gap < -tol::utility_tie) return -1.0;
    return 0.0;  // a tie never separates a plain pair under either convention
  };
  // membership indicator of {U_t(a) >= U_t(b)} under the weak reading, or the
  // strict set {U_t(a) > U_t(b)} otherwise
  auto set_member = [&](Index a, Index b, Index t) -> double {
    const double gap = util(a, t) - util(b, t);
    if (gap > tol::utility_tie) return 1.0;
    if (std::abs(gap) <= tol::utility_tie) return weak ? 1.0 : 0.0;
    return 0.0;
  };

  std::vector<MassRow> rows;
  for (const Pair& s : prefs.uncertain_strict) {
    MassRow row;
    row.coeffs = Vector::Zero(n_points);
    for (Index t = 0; t < n_points; ++t) row.coeffs(t) = pair_sign(s.first, s.second, t);
    row.with_margin = true;
    row.name = "pref " + perf.label(s.first) + " over " + perf.label(s.second);
    rows.push_back(std::move(row));
  }
  for (const Quad& s : prefs.uncertain_intensity) {
    MassRow row;
    row.coeffs = Vector::Zero(n_points);
    for (Index t = 0; t < n_points; ++t)
      row.coeffs(t) = set_member(s.a, s.b, t) - set_member(s.c, s.d, t);
    row.with_margin = true;
    row.name = "intensity (" + perf.label(s.a) + "," + perf.label(s.b) + ") over (" +
               perf.label(s.c) + "," + perf.label(s.d) + ")";
    rows.push_back(std::move(row));
  }
  for (const Pair& s : prefs.uncertain_indiff) {
    MassRow forward;
    forward.coeffs = Vector::Zero(n_points);
    for (Index t = 0; t < n_points; ++t) forward.coeffs(t) = pair_sign(s.first, s.second, t);
    MassRow backward;
    backward.coeffs = -forward.coeffs;
    forward.name = "indiff " + perf.label(s.first) + " ~ " + perf.label(s.second) + " (fwd)";
    backward.name = "indiff " + perf.label(s.first) + " ~ " + perf.label(s.second) + " (bwd)";
    rows.push_back(std::move(forward));
    rows.push_back(std::move(backward));
  }
  return rows;
}

// ---- shared LP + sampling machinery ---------------------------------------------

namespace {

// adjacent ordering rows after sorting by distance: (closer, farther) index
// pairs, equal distances forced equal
struct OrderingRows {
  std::vector<Pair> monotone;  // p[first] >= p[second]
  std::vector<Pair> equal;     // p[first] == p[second]
};

OrderingRows ordering_rows(const Vector& dist) {
  const Index n = dist.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (dist(a) != dist(b)) return dist(a) < dist(b);
    return a < b;
  });
  OrderingRows rows;
  for (Index i = 0; i + 1 < n; ++i) {
    const Index s = order[static_cast<std::size_t>(i)];
    const Index t = order[static_cast<std::size_t>(i + 1)];
    if (dist(t) - dist(s) <= tol::distance_tie)
      rows.equal.push_back({s, t});
    else
      rows.monotone.push_back({s, t});
  }
  return rows;
}

// max-margin LP over n_vars mass-like variables plus one margin variable
struct MassLp {
  Index n_vars = 0;
  std::vector<MassRow> statements;  // coeffs over the n_vars
  std::vector<Pair> monotone;      // x[first] >= x[second]
  std::vector<Pair> equal;         // x[first] == x[second]
  Vector total_row;                // total_row . x == 1
};

struct MassLpOutcome {
  double epsilon_star = 0.0;
  Vector solution;  // the n_vars mass-like variables at the maximum
};

MassLpOutcome solve_mass_lp(const MassLp& spec, const char* what) {
  const Index v = spec.n_vars;
  const Index eps = v;  // margin variable index
  const Index n_rows = static_cast<Index>(spec.statements.size() + spec.monotone.size() +
                                          spec.equal.size()) + 2;
  LinearProgram lp;
  lp.maximize = true;
  lp.objective = Vector::Zero(v + 1);
  lp.objective(eps) = 1.0;
  lp.rows = Matrix::Zero(n_rows, v + 1);
  lp.rhs = Vector::Zero(n_rows);
  lp.relations.assign(static_cast<std::size_t>(n_rows), Relation::GE);
  lp.lower = Vector::Zero(v + 1);
  lp.lower(eps) = -1.0;

  Index r = 0;
  for (const MassRow& row : spec.statements) {
    lp.rows.row(r).head(v) = row.coeffs.transpose();
    if (row.with_margin) lp.rows(r, eps) = -1.0;
    lp.row_names.push_back(row.name);
    ++r;
  }
  for (const Pair& p : spec.monotone) {
    lp.rows(r, p.first) = 1.0;
    lp.rows(r, p.second) = -1.0;
    lp.row_names.push_back("ordering");
    ++r;
  }
  for (const Pair& p : spec.equal) {
    lp.rows(r, p.first) = 1.0;
    lp.rows(r, p.second) = -1.0;
    lp.relations[static_cast<std::size_t>(r)] = Relation::EQ;
    lp.row_names.push_back("ordering (tie)");
    ++r;
  }
  lp.rows.row(r).head(v) = spec.total_row.transpose();
  lp.rhs(r) = 1.0;
  lp.relations[static_cast<std::size_t>(r)] = Relation::EQ;
  lp.row_names.push_back("total mass");
  ++r;
  lp.rows(r, eps) = 1.0;
  lp.rhs(r) = 1.0;
  lp.relations[static_cast<std::size_t>(r)] = Relation::LE;
  lp.row_names.push_back("margin cap");

  LpOutcome outcome = solve(lp);
  if (outcome.status != LpStatus::Optimal)
    throw std::runtime_error(std::string(what) + ": margin program failed (" + outcome.message + ")");
  MassLpOutcome result;
  result.epsilon_star = outcome.objective;
  result.solution = outcome.solution.head(v);
  return result;
}

PolytopeSpec mass_polytope(const MassLp& spec, double margin) {
  const Index v = spec.n_vars;
  const Index n_ineq = static_cast<Index>(spec.statements.size() + spec.monotone.size());
  PolytopeSpec poly;
  poly.dimension = v;
  poly.ineq_rows = Matrix::Zero(n_ineq, v);
  poly.ineq_rhs = Vector::Zero(n_ineq);
  Index r = 0;
  for (const MassRow& row : spec.statements) {  // coeffs . x >= margin  ->  -coeffs . x <= -margin
    poly.ineq_rows.row(r) = -row.coeffs.transpose();
    poly.ineq_rhs(r) = row.with_margin ? -margin : 0.0;
    ++r;
  }
  for (const Pair& p : spec.monotone) {
    poly.ineq_rows(r, p.first) = -1.0;
    poly.ineq_rows(r, p.second) = 1.0;
    ++r;
  }
  poly.eq_rows = Matrix::Zero(static_cast<Index>(spec.equal.size()) + 1, v);
  poly.eq_rhs = Vector::Zero(static_cast<Index>(spec.equal.size()) + 1);
  Index e = 0;
  for (const Pair& p : spec.equal) {
    poly.eq_rows(e, p.first) = 1.0;
    poly.eq_rows(e, p.second) = -1.0;
    ++e;
  }
  poly.eq_rows.row(e) = spec.total_row.transpose();
  poly.eq_rhs(e) = 1.0;
  poly.nonneg.assign(static_cast<std::size_t>(v), 1);
  return poly;
}

Vector normalized(Vector p) {
  p = p.cwiseMax(0.0);
  const double total = p.sum();
  if (!(total > 0.0)) throw std::runtime_error("mass inference: degenerate mass vector");
  return p / total;
}

// Runs the LP, and on a positive margin replaces the solution by the barycenter
// of sampled compatible distributions.  `expand` maps the LP variables to the
// per-function masses (identity for ssor/acg, interpolation for acg_pl).
template <typename Expand>
void lp_method_body(const MassLp& spec, const InferenceOptions& options, RngStream& rng,
                    const char* what, const Expand& expand, MethodResult* out,
                    Vector* variable_means) {
  MassLpOutcome lp = solve_mass_lp(spec, what);
  out->has_epsilon = true;
  out->epsilon_star = lp.epsilon_star;
  out->compatible = lp.epsilon_star > tol::compatibility;
  out->sampled = false;
  Vector vars = lp.solution;
  if (out->compatible) {
    try {
      const PolytopeSpec poly = mass_polytope(spec, kEpsilonShrink * lp.epsilon_star);
      const Matrix draws = har_sample(poly, options.dist_samples, options.sampler, rng);
      vars = draws.colwise().mean().transpose();
      out->sampled = true;
      if (options.keep_draws) {
        out->draws = Matrix(draws.rows(), expand(vars).size());
        for (Index i = 0; i < draws.rows(); ++i)
          out->draws.row(i) = normalized(expand(draws.row(i).transpose())).transpose();
      }
    } catch (const std::runtime_error&) {
      // zero-volume polytope (e.g. fully tied ordering): keep the LP solution
      vars = lp.solution;
      out->sampled = false;
    }
  }
  if (variable_means) *variable_means = vars;
  out->masses = normalized(expand(vars));
}

Vector total_mass_row(Index n) { return Vector::Ones(n); }

}  // namespace

// ---- ssor ----------------------------------------------------------------------

MethodResult ssor(const PerformanceMatrix& perf, const OmegaSample& omega,
                  const PreferenceInfo& prefs, const InferenceOptions& options, RngStream& rng) {
  MassLp spec;
  spec.n_vars = omega.size();
  spec.statements = statement_rows(perf, omega, prefs, RowConvention::StrictSets);
  spec.total_row = total_mass_row(omega.size());

  MethodResult out;
  out.method = "ssor";
  lp_method_body(spec, options, rng, "ssor", [](const Vector& x) { return x; }, &out, nullptr);
  return out;
}

// ---- acg -----------------------------------------------------------------------

MethodResult acg(const PerformanceMatrix& perf, const OmegaSample& omega,
                 const PreferenceInfo& prefs, const ReferenceModel& ref,
                 const InferenceOptions& options, RngStream& rng) {
  if (!ref.resolved())
    throw std::invalid_argument("acg: reference model must be resolved to concrete weights");
  const Vector dist = distance_profile(omega, ref.weights);
  const OrderingRows order = ordering_rows(dist);

  MassLp spec;
  spec.n_vars = omega.size();
  spec.statements = statement_rows(perf, omega, prefs, RowConvention::WeakSets);
  spec.monotone = order.monotone;
  spec.equal = order.equal;
  spec.total_row = total_mass_row(omega.size());

  MethodResult out;
  out.method = "acg";
  out.reference_kind = ref.kind;
  out.reference_weights = ref.weights;
  lp_method_body(spec, options, rng, "acg", [](const Vector& x) { return x; }, &out, nullptr);
  return out;
}

// ---- acg_pl --------------------------------------------------------------------

namespace {

Matrix interpolation_matrix(const Vector& dist, const Vector& knots) {
  const Index n = dist.size();
  const Index q = knots.size();
  Matrix c = Matrix::Zero(n, q);
  for (Index t = 0; t < n; ++t) {
    const double d = dist(t);
    Index k = 1;
    while (k < q - 1 && d > knots(k)) ++k;  // knots(k-1) <= d <= knots(k)
    const double lo = knots(k - 1), hi = knots(k);
    const double span = hi - lo;
    double w_hi = (d - lo) / span;
    w_hi = std::min(1.0, std::max(0.0, w_hi));  // clamp roundoff at the ends
    c(t, k - 1) = 1.0 - w_hi;
    c(t, k) = w_hi;
  }
  return c;
}

Vector equally_spaced_knots(double d_max, Index q) {
  Vector knots(q);
  for (Index k = 0; k < q; ++k)
    knots(k) = d_max * static_cast<double>(k) / static_cast<double>(q - 1);
  return knots;
}

}  // namespace

MethodResult acg_pl(const PerformanceMatrix& perf, const OmegaSample& omega,
                    const PreferenceInfo& prefs, const ReferenceModel& ref,
                    const Vector& breakpoints, const InferenceOptions& options, RngStream& rng) {
  if (!ref.resolved())
    throw std::invalid_argument("acg_pl: reference model must be resolved to concrete weights");
  const Index q = breakpoints.size();
  if (q < 2) throw std::invalid_argument("acg_pl: need at least two breakpoints");
  const Vector dist = distance_profile(omega, ref.weights);
  const double d_max = dist.maxCoeff();
  if (!(d_max > 0.0)) throw std::invalid_argument("acg_pl: every sampled function sits on the reference");
  if (breakpoints(0) != 0.0)
    throw std::invalid_argument("acg_pl: first breakpoint must be zero");
  for (Index k = 1; k < q; ++k)
    if (breakpoints(k) <= breakpoints(k - 1))
      throw std::invalid_argument("acg_pl: breakpoints must increase strictly");
  if (std::abs(breakpoints(q - 1) - d_max) > 1e-9 * std::max(1.0, d_max))
    throw std::invalid_argument("acg_pl: last breakpoint must be the maximal distance");
  Vector knots = breakpoints;
  knots(q - 1) = d_max;  // pin the far end exactly

  const Matrix c = interpolation_matrix(dist, knots);
  const std::vector<MassRow> omega_rows = statement_rows(perf, omega, prefs, RowConvention::WeakSets);

  MassLp spec;
  spec.n_vars = q;
  for (const MassRow& row : omega_rows) {  // restate each row over breakpoint masses
    MassRow reduced;
    reduced.coeffs = c.transpose() * row.coeffs;
    reduced.with_margin = row.with_margin;
    reduced.name = row.name;
    spec.statements.push_back(std::move(reduced));
  }
  // leading breakpoints with no function in reach carry no constraint except
  // monotonicity, which leaves them unbounded above; pin that prefix to the
  // first breakpoint any function interpolates against (no mass is affected)
  Index first_live = q - 1;
  for (Index k = 0; k < q; ++k)
    if (c.col(k).maxCoeff() > 0.0) {
      first_live = k;
      break;
    }
  for (Index k = 0; k + 1 < q; ++k) {
    if (k < first_live)
      spec.equal.push_back({k, k + 1});
    else
      spec.monotone.push_back({k, k + 1});
  }
  spec.total_row = c.colwise().sum().transpose();

  MethodResult out;
  out.method = "acg_pl";
  out.reference_kind = ref.kind;
  out.reference_weights = ref.weights;
  out.breakpoints = knots;
  Vector knot_masses;
  lp_method_body(spec, options, rng, "acg_pl",
                 [&](const Vector& y) -> Vector { return c * y; }, &out, &knot_masses);
  // share the normalization constant with the expanded masses so that a
  // function sitting exactly on a breakpoint carries exactly that knot's mass
  out.breakpoint_masses = knot_masses / (c * knot_masses).sum();
  return out;
}

MethodResult acg_pl(const PerformanceMatrix& perf, const OmegaSample& omega,
                    const PreferenceInfo& prefs, const ReferenceModel& ref, Index q,
                    const InferenceOptions& options, RngStream& rng) {
  if (!ref.resolved())
    throw std::invalid_argument("acg_pl: reference model must be resolved to concrete weights");
  if (q < 2) throw std::invalid_argument("acg_pl: need at least two breakpoints");
  const Vector dist = distance_profile(omega, ref.weights);
  const double d_max = dist.maxCoeff();
  if (!(d_max > 0.0)) throw std::invalid_argument("acg_pl: every sampled function sits on the reference");
  return acg_pl(perf, omega, prefs, ref, equally_spaced_knots(d_max, q), options, rng);
}

// ---- acg_nl --------------------------------------------------------------------

namespace {

// unnormalized kernel values, rescaled so the nearest function carries 1
Vector kernel_weights(Family family, double lambda, const Vector& dist) {
  const Index n = dist.size();
  const double d_min = dist.minCoeff();
  Vector w(n);
  if (family == Family::Normal) {
    if (lambda == 0.0) {  // continuous limit: the closest functions alone survive
      for (Index t = 0; t < n; ++t) w(t) = (dist(t) - d_min <= tol::distance_tie) ? 1.0 : 0.0;
    } else {
      w = (-(dist.array().square() - d_min * d_min) / (2.0 * lambda * lambda)).exp();
    }
  } else {
    w = (-lambda * (dist.array() - d_min)).exp();  // lambda = 0 gives exact uniformity
  }
  return w;
}

Vector family_masses(Family family, double lambda, const Vector& dist) {
  const Vector w = kernel_weights(family, lambda, dist);
  return w / w.sum();
}

// admissible share of the kernel, as a ratio of unnormalized sums: when every
// function is admissible the two sums are the same sum and the value is an
// exact 1 at every rate
double nl_objective(Family family, double lambda, const Vector& dist,
                    const std::vector<char>& in_b) {
  const Vector w = kernel_weights(family, lambda, dist);
  double admissible = 0.0, total = 0.0;
  for (Index t = 0; t < w.size(); ++t) {
    total += w(t);
    if (in_b[static_cast<std::size_t>(t)]) admissible += w(t);
  }
  return admissible / total;
}

// candidate grid over [0, lambda_max]: geometric spacing resolves the small
// scales where kernel transitions live, a linear stripe covers the rest
std::vector<double> lambda_grid(double lambda_max) {
  std::vector<double> grid;
  grid.push_back(0.0);
  const double lo = 1e-4;
  const int geo = 640, lin = 384;
  for (int i = 0; i <= geo; ++i)
    grid.push_back(lo * std::pow(lambda_max / lo, static_cast<double>(i) / geo));
  for (int i = 1; i <= lin; ++i)
    grid.push_back(lambda_max * static_cast<double>(i) / lin);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

template <typename F>
double golden_max(const F& f, double lo, double hi, double* best_value) {
  const double ratio = 0.6180339887498949;
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int iter = 0; iter < 70; ++iter) {
    if (f1 >= f2) {  // prefer the left: smaller rate on flat stretches
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  *best_value = std::max(f1, f2);
  return f1 >= f2 ? x1 : x2;
}

FamilyOptimum search_lambda(Family family, const Vector& dist, const std::vector<char>& in_b,
                            double lambda_max) {
  auto objective = [&](double lambda) { return nl_objective(family, lambda, dist, in_b); };
  const std::vector<double> grid = lambda_grid(lambda_max);

  std::size_t best_idx = 0;
  double best_obj = objective(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double value = objective(grid[i]);
    if (value >= best_obj) {  // walk plateaus to their far end
      best_obj = value;
      best_idx = i;
    }
  }
  const double lo = grid[best_idx > 0 ? best_idx - 1 : 0];
  const double hi = grid[std::min(best_idx + 1, grid.size() - 1)];
  double refined_obj = best_obj;
  const double refined = lo < hi ? golden_max(objective, lo, hi, &refined_obj) : grid[best_idx];

  // A strictly climbing ratio saturates numerically well before the rate
  // bound, so exact ties at the top are the rule, not the exception.  A tie
  // that already holds at rate zero keeps the degenerate limit; otherwise the
  // largest tying rate marks the true end of the climb.
  struct Candidate {
    double lambda, objective;
  };
  std::vector<Candidate> candidates = {{grid[best_idx], best_obj},
                                       {refined, refined_obj},
                                       {lambda_max, objective(lambda_max)}};
  const double at_zero = objective(0.0);
  double top = at_zero;
  for (const Candidate& c : candidates) top = std::max(top, c.objective);
  FamilyOptimum opt;
  if (at_zero >= top) {
    opt.lambda = 0.0;
    opt.objective = at_zero;
  } else {
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.lambda > b.lambda; });
    for (const Candidate& c : candidates)
      if (c.objective >= top) {
        opt.lambda = c.lambda;
        opt.objective = c.objective;
        break;
      }
  }
  opt.at_boundary = opt.lambda >= lambda_max * (1.0 - 1e-9) && lambda_max > 0.0;
  if (opt.at_boundary) {  // report the interval end exactly
    opt.lambda = lambda_max;
    opt.objective = objective(lambda_max);
  }
  return opt;
}

// joint direct search over (reference parameters, rate) for unresolved
// references; parameters live on a simplex (mixture coefficients or weights)
FamilyOptimum joint_search(Family family, const ReferenceModel& ref, const OmegaSample& omega,
                           const std::vector<char>& in_b, double lambda_max, Index budget) {
  const bool mix = ref.kind == ReferenceKind::ConvexCombination;
  const Index p_dim = mix ? ref.basis.rows() : ref.dimension;
  auto reference_of = [&](const Vector& params) -> Vector {
    if (mix) return ref.basis.transpose() * params;
    return params;
  };

  Index evals = 0;
  const std::vector<double> probe = {0.0,  0.1,  0.5,   1.0,  2.0,        5.0,
                                     10.0, 25.0, 100.0, 400.0, lambda_max};
  auto score = [&](const Vector& params, double* best_lambda) {
    const Vector dist = distance_profile(omega, reference_of(params));
    double best = -1.0;
    for (double lambda : probe) {
      if (lambda > lambda_max) continue;
      const double value = nl_objective(family, lambda, dist, in_b);
      ++evals;
      if (value > best + 1e-12) {
        best = value;
        *best_lambda = lambda;
      }
    }
    return best;
  };

  Vector params = Vector::Constant(p_dim, 1.0 / static_cast<double>(p_dim));
  double lambda_here = 0.0;
  double best = score(params, &lambda_here);
  double step = 0.25;
  const Index reserve = 1300;  // final single-variable refinement
  while (step > 1e-3 && evals + 2 * p_dim * static_cast<Index>(probe.size()) < budget - reserve) {
    bool moved = false;
    Vector best_params = params;
    double best_value = best, best_lambda = lambda_here;
    for (Index i = 0; i < p_dim; ++i)
      for (double sign : {1.0, -1.0}) {
        Vector trial = params;
        trial(i) = std::max(0.0, trial(i) + sign * step);
        const double total = trial.sum();
        if (!(total > 0.0)) continue;
        trial /= total;
        double trial_lambda = 0.0;
        const double value = score(trial, &trial_lambda);
        if (value > best_value + 1e-12) {
          best_value = value;
          best_params = trial;
          best_lambda = trial_lambda;
          moved = true;
        }
      }
    if (moved) {
      params = best_params;
      best = best_value;
      lambda_here = best_lambda;
    } else {
      step *= 0.5;
    }
  }

  const Vector dist = distance_profile(omega, reference_of(params));
  FamilyOptimum opt = search_lambda(family, dist, in_b, lambda_max);
  opt.reference = reference_of(params);
  return opt;
}

}  // namespace

MethodResult acg_nl(const PerformanceMatrix& perf, const OmegaSample& omega,
                    const PreferenceInfo& prefs, const ReferenceModel& ref,
                    const InferenceOptions& options) {
  check_preferences(prefs, perf.alternatives());
  const Matrix util = utilities(perf, omega);
  const std::vector<Pair> weak = weak_statements(prefs);
  Index k_used = 0;
  const std::vector<char> in_b = admissible_set(util, weak, &k_used);

  MethodResult out;
  out.method = "acg_nl";
  out.is_parametric = true;
  out.reference_kind = ref.kind;
  out.agreement_count = k_used;
  out.compatible = k_used == static_cast<Index>(weak.size());

  if (ref.resolved()) {
    const Vector dist = distance_profile(omega, ref.weights);
    out.normal_optimum = search_lambda(Family::Normal, dist, in_b, options.lambda_max);
    out.exponential_optimum = search_lambda(Family::Exponential, dist, in_b, options.lambda_max);
    out.normal_optimum.reference = ref.weights;
    out.exponential_optimum.reference = ref.weights;
  } else {
    out.normal_optimum =
        joint_search(Family::Normal, ref, omega, in_b, options.lambda_max, options.joint_budget);
    out.exponential_optimum = joint_search(Family::Exponential, ref, omega, in_b,
                                           options.lambda_max, options.joint_budget);
  }

  const bool pick_normal = out.normal_optimum.objective > out.exponential_optimum.objective + 1e-12;
  const FamilyOptimum& chosen = pick_normal ? out.normal_optimum : out.exponential_optimum;
  out.family = pick_normal ? Family::Normal : Family::Exponential;
  out.lambda = chosen.lambda;
  out.lambda_at_boundary = chosen.at_boundary;
  out.reference_weights = chosen.reference;
  out.masses = family_masses(out.family, out.lambda, distance_profile(omega, chosen.reference));
  return out;
}

}  // namespace smaa
