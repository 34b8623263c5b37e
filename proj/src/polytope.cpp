#include "smaa/polytope.hpp"

#include <algorithm>
#include <cmath>

namespace smaa {

namespace {

constexpr double kRadiusTol = 1e-10;   // below this the region is degenerate
constexpr double kHullTol = 1e-12;     // rows with no component in the hull
constexpr long kProjectEvery = 64;     // re-project onto the hull periodically

// compressed rows so sparse constraint families (two-entry ordering rows) cost
// O(nnz) per step instead of O(dimension)
struct SparseRows {
  std::vector<std::vector<std::pair<Index, double>>> entries;
  Vector rhs;

  void build(const Matrix& rows, const Vector& b) {
    rhs = b;
    entries.resize(static_cast<size_t>(rows.rows()));
    for (Index r = 0; r < rows.rows(); ++r) {
      auto& e = entries[static_cast<size_t>(r)];
      for (Index j = 0; j < rows.cols(); ++j)
        if (rows(r, j) != 0.0) e.push_back({j, rows(r, j)});
    }
  }
  double dot(Index r, const Vector& x) const {
    double s = 0.0;
    for (const auto& [j, v] : entries[static_cast<size_t>(r)]) s += v * x[j];
    return s;
  }
  size_t size() const { return entries.size(); }
};

// orthonormal basis of the span of the equality normals (columns of Q)
Matrix equality_normal_basis(const Matrix& eq_rows) {
  if (eq_rows.rows() == 0) return Matrix(eq_rows.cols(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(eq_rows.transpose());
  const Index rank = qr.rank();
  Matrix q = qr.householderQ() * Matrix::Identity(eq_rows.cols(), rank);
  return q;
}

}  // namespace

double PolytopeSpec::violation(const Vector& x) const {
  double worst = 0.0;
  for (Index r = 0; r < ineq_rows.rows(); ++r)
    worst = std::max(worst, ineq_rows.row(r).dot(x) - ineq_rhs[r]);
  for (Index r = 0; r < eq_rows.rows(); ++r)
    worst = std::max(worst, std::abs(eq_rows.row(r).dot(x) - eq_rhs[r]));
  for (Index j = 0; j < dimension; ++j)
    if (!nonneg.empty() && nonneg[static_cast<size_t>(j)]) worst = std::max(worst, -x[j]);
  return worst;
}

ChebyshevResult chebyshev_center(const PolytopeSpec& spec) {
  const Index n = spec.dimension;
  if (n <= 0) throw std::invalid_argument("chebyshev: empty dimension");
  const Matrix q = equality_normal_basis(spec.eq_rows);
  if (q.cols() >= n)
    throw std::runtime_error("chebyshev: equality constraints leave no degrees of freedom");

  // hull-projected norm of a row: |P a| with P = I - Q Q^T
  auto hull_norm = [&](const Vector& a) {
    const double full = a.squaredNorm();
    const double inpart = (q.transpose() * a).squaredNorm();
    return std::sqrt(std::max(0.0, full - inpart));
  };

  const Index n_ineq = spec.ineq_rows.rows();
  Index n_nonneg = 0;
  for (char f : spec.nonneg)
    if (f) ++n_nonneg;
  const Index nr = n_ineq + n_nonneg + spec.eq_rows.rows();

  LinearProgram lp;
  lp.maximize = true;
  lp.objective = Vector::Zero(n + 1);
  lp.objective[n] = 1.0;  // radius
  lp.rows = Matrix::Zero(nr, n + 1);
  lp.rhs = Vector::Zero(nr);
  lp.relations.assign(static_cast<size_t>(nr), Relation::LE);
  lp.lower = Vector::Constant(n + 1, kNegInf);
  lp.lower[n] = 0.0;
  for (Index j = 0; j < n; ++j)
    if (!spec.nonneg.empty() && spec.nonneg[static_cast<size_t>(j)]) lp.lower[j] = 0.0;

  Index r = 0;
  for (Index i = 0; i < n_ineq; ++i, ++r) {
    lp.rows.block(r, 0, 1, n) = spec.ineq_rows.row(i);
    lp.rows(r, n) = hull_norm(spec.ineq_rows.row(i).transpose());
    lp.rhs[r] = spec.ineq_rhs[i];
  }
  for (Index j = 0; j < n; ++j) {
    if (spec.nonneg.empty() || !spec.nonneg[static_cast<size_t>(j)]) continue;
    lp.rows(r, j) = -1.0;
    lp.rows(r, n) = std::sqrt(std::max(0.0, 1.0 - q.row(j).squaredNorm()));
    ++r;
  }
  for (Index i = 0; i < spec.eq_rows.rows(); ++i, ++r) {
    lp.rows.block(r, 0, 1, n) = spec.eq_rows.row(i);
    lp.rhs[r] = spec.eq_rhs[i];
    lp.relations[static_cast<size_t>(r)] = Relation::EQ;
  }

  const LpOutcome out = solve(lp);
  if (out.status == LpStatus::Infeasible)
    throw std::runtime_error("chebyshev: polytope is empty");
  if (out.status != LpStatus::Optimal)
    throw std::runtime_error("chebyshev: center LP failed (" + out.message + ")");
  ChebyshevResult res;
  res.center = out.solution.head(n);
  res.radius = out.solution[n];
  if (res.radius <= kRadiusTol)
    throw std::runtime_error("chebyshev: region is degenerate (zero volume in the affine hull)");
  return res;
}

Matrix har_sample(const PolytopeSpec& spec, Index count, const SamplerConfig& config,
                  RngStream& rng) {
  if (count <= 0) throw std::invalid_argument("har: count must be positive");
  if (config.burn_in < 0 || config.thinning < 1)
    throw std::invalid_argument("har: bad burn-in or thinning");
  const Index n = spec.dimension;

  const ChebyshevResult start = chebyshev_center(spec);
  const Matrix q = equality_normal_basis(spec.eq_rows);

  // precomputed correction back onto the affine hull: x <- x - pinv(E)(Ex - b)
  Eigen::CompleteOrthogonalDecomposition<Matrix> eq_cod;
  const bool have_eq = spec.eq_rows.rows() > 0;
  if (have_eq) eq_cod.compute(spec.eq_rows);

  SparseRows rows;
  rows.build(spec.ineq_rows, spec.ineq_rhs);
  std::vector<double> cache(rows.size());  // a_r . x, updated incrementally

  Vector x = start.center;
  for (size_t r = 0; r < rows.size(); ++r) cache[r] = rows.dot(static_cast<Index>(r), x);

  Matrix result(count, n);
  Index produced = 0;
  long step = 0;
  const long total_steps = config.burn_in + static_cast<long>(count) * config.thinning;
  long guard = 0;
  const long guard_cap = 100 * (total_steps + 10);

  while (produced < count) {
    if (++guard > guard_cap) throw std::runtime_error("har: chord search stalled");

    // direction uniform on the sphere of the hull
    Vector d(n);
    for (Index j = 0; j < n; ++j) d[j] = rng.gaussian();
    if (q.cols() > 0) d -= q * (q.transpose() * d);
    const double dn = d.norm();
    if (dn < 1e-14) continue;
    d /= dn;

    // feasible chord [lo, hi]
    double lo = -1e30, hi = 1e30;
    bool dead = false;
    std::vector<double> ad(rows.size());
    for (size_t r = 0; r < rows.size() && !dead; ++r) {
      const double a_dot_d = rows.dot(static_cast<Index>(r), d);
      ad[r] = a_dot_d;
      const double slack = rows.rhs[static_cast<Index>(r)] - cache[r];
      if (a_dot_d > kHullTol)
        hi = std::min(hi, slack / a_dot_d);
      else if (a_dot_d < -kHullTol)
        lo = std::max(lo, slack / a_dot_d);
      else if (slack < -tol::mass)
        dead = true;  // row violated and direction cannot fix it
    }
    if (!spec.nonneg.empty()) {
      for (Index j = 0; j < n; ++j) {
        if (!spec.nonneg[static_cast<size_t>(j)]) continue;
        if (d[j] > kHullTol)
          lo = std::max(lo, -x[j] / d[j]);
        else if (d[j] < -kHullTol)
          hi = std::min(hi, -x[j] / d[j]);
      }
    }
    if (dead || hi - lo <= 1e-14) continue;  // redraw direction

    const double t = rng.uniform(lo, hi);
    x += t * d;
    for (size_t r = 0; r < rows.size(); ++r) cache[r] += t * ad[r];
    ++step;

    if (have_eq && step % kProjectEvery == 0) {
      // undo accumulated drift off the hull
      Vector resid = spec.eq_rows * x - spec.eq_rhs;
      if (resid.cwiseAbs().maxCoeff() > 1e-13) {
        x -= eq_cod.solve(resid);
        for (size_t r = 0; r < rows.size(); ++r) cache[r] = rows.dot(static_cast<Index>(r), x);
      }
    }

    if (step > config.burn_in && (step - config.burn_in) % config.thinning == 0) {
      if (spec.violation(x) > tol::mass)
        throw std::runtime_error("har: walk left the polytope beyond tolerance");
      result.row(produced++) = x.transpose();
    }
  }
  return result;
}

OmegaSample sample_weight_space(const PerformanceMatrix& perf, const PreferenceInfo& prefs,
                                Index count, const SamplerConfig& config, RngStream& rng) {
  const Index n = perf.criteria();
  PolytopeSpec spec;
  spec.dimension = n;
  spec.eq_rows = Matrix::Ones(1, n);
  spec.eq_rhs = Vector::Ones(1);
  spec.nonneg.assign(static_cast<size_t>(n), 1);

  if (prefs.has_certain()) {
    const CompatibilityResult compat = compatibility_check(perf, prefs);
    if (!compat.compatible)
      throw std::runtime_error("weight sampling: certain statements are incompatible");
    const double margin = kEpsilonShrink * compat.epsilon_star;
    const auto wrows = certain_rows(perf, prefs);
    Index n_ineq = 0, n_eq = 1;
    for (const auto& wr : wrows) (wr.equality ? n_eq : n_ineq)++;
    spec.ineq_rows = Matrix::Zero(n_ineq, n);
    spec.ineq_rhs = Vector::Zero(n_ineq);
    Matrix eq(n_eq, n);
    Vector eqb(n_eq);
    eq.row(0).setOnes();
    eqb[0] = 1.0;
    Index ri = 0, re = 1;
    for (const auto& wr : wrows) {
      if (wr.equality) {
        eq.row(re) = wr.coeffs.transpose();
        eqb[re] = 0.0;
        ++re;
      } else {
        spec.ineq_rows.row(ri) = -wr.coeffs.transpose();  // coeffs . w >= margin
        spec.ineq_rhs[ri] = -margin;
        ++ri;
      }
    }
    spec.eq_rows = eq;
    spec.eq_rhs = eqb;
  }

  Matrix pts = har_sample(spec, count, config, rng);
  // scrub float dust so every row is a valid weight vector
  for (Index t = 0; t < pts.rows(); ++t) {
    Vector w = pts.row(t).transpose().cwiseMax(0.0);
    pts.row(t) = (w / w.sum()).transpose();
  }
  return OmegaSample(pts);
}

std::vector<MassDistribution> sample_distribution_polytope(const PolytopeSpec& spec, Index count,
                                                           const SamplerConfig& config,
                                                           RngStream& rng) {
  Matrix pts = har_sample(spec, count, config, rng);
  std::vector<MassDistribution> out;
  out.reserve(static_cast<size_t>(count));
  for (Index t = 0; t < pts.rows(); ++t) {
    Vector p = pts.row(t).transpose().cwiseMax(0.0);
    const double s = p.sum();
    if (std::abs(s - 1.0) > tol::mass)
      throw std::runtime_error("distribution sampling: mass drifted off the simplex");
    out.emplace_back(p / s);
  }
  return out;
}

}  // namespace smaa
