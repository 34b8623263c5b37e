#include "smaa/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace smaa {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr double kPhase1Tol = 1e-8;
constexpr int kStallLimit = 64;  // degenerate pivots before switching to Bland's rule

// One simplex phase on the tableau: rows 0..m-1 are constraints, row m is the
// reduced-cost row, column cols-1 is the RHS.  basis[r] is the column basic in
// row r.  allowed[j] marks columns permitted to enter.  Returns false when the
// problem is unbounded in this phase.
bool run_simplex(Tableau& tab, std::vector<Index>& basis, const std::vector<char>& allowed,
                 long max_iter, bool* hit_cap) {
  const Index m = tab.rows() - 1;
  const Index cols = tab.cols() - 1;
  int stall = 0;
  bool bland = false;
  double last_obj = tab(m, cols);
  *hit_cap = false;

  for (long iter = 0; iter < max_iter; ++iter) {
    // entering column
    Index enter = -1;
    if (!bland) {
      double best = -kReducedCostTol;
      for (Index j = 0; j < cols; ++j)
        if (allowed[static_cast<size_t>(j)] && tab(m, j) < best) {
          best = tab(m, j);
          enter = j;
        }
    } else {
      for (Index j = 0; j < cols; ++j)
        if (allowed[static_cast<size_t>(j)] && tab(m, j) < -kReducedCostTol) {
          enter = j;
          break;
        }
    }
    if (enter < 0) return true;  // optimal for this phase

    // ratio test; ties resolved toward the smallest basic variable index so the
    // Bland fallback is anti-cycling
    Index leave = -1;
    double best_ratio = 0.0;
    for (Index r = 0; r < m; ++r) {
      const double a = tab(r, enter);
      if (a <= kPivotTol) continue;
      const double ratio = tab(r, cols) / a;
      if (leave < 0 || ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && basis[static_cast<size_t>(r)] <
                                             basis[static_cast<size_t>(leave)])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return false;  // unbounded direction

    // pivot
    const double piv = tab(leave, enter);
    tab.row(leave) /= piv;
    for (Index r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = tab(r, enter);
      if (f != 0.0) tab.row(r) -= f * tab.row(leave);
    }
    basis[static_cast<size_t>(leave)] = enter;

    const double obj = tab(m, cols);
    if (std::abs(obj - last_obj) <= 1e-12) {
      if (++stall >= kStallLimit) bland = true;
    } else {
      stall = 0;
      bland = false;
    }
    last_obj = obj;
  }
  *hit_cap = true;
  return true;
}

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
  LpOutcome out;
  const Index nvar = lp.variables();
  const Index nrow = lp.row_count();
  if (nvar == 0 || lp.rows.cols() != nvar || lp.rhs.size() != nrow ||
      static_cast<Index>(lp.relations.size()) != nrow || lp.lower.size() != nvar) {
    out.message = "malformed program";
    return out;
  }

  // shift variables to y >= 0: finite lower bounds become shifts, free
  // variables are split into a positive and a negative part
  std::vector<Index> pos_col(static_cast<size_t>(nvar)), neg_col(static_cast<size_t>(nvar), -1);
  Vector shift = Vector::Zero(nvar);
  Index ncols_struct = 0;
  for (Index j = 0; j < nvar; ++j) {
    pos_col[static_cast<size_t>(j)] = ncols_struct++;
    if (lp.lower[j] == kNegInf)
      neg_col[static_cast<size_t>(j)] = ncols_struct++;
    else
      shift[j] = lp.lower[j];
  }

  // structural rows over y with sign-normalized RHS
  Matrix a(nrow, ncols_struct);
  Vector b(nrow);
  std::vector<Relation> rel(lp.relations);
  for (Index r = 0; r < nrow; ++r) {
    double rb = lp.rhs[r] - lp.rows.row(r).dot(shift);
    Vector row = Vector::Zero(ncols_struct);
    for (Index j = 0; j < nvar; ++j) {
      const double c = lp.rows(r, j);
      row[pos_col[static_cast<size_t>(j)]] = c;
      if (neg_col[static_cast<size_t>(j)] >= 0) row[neg_col[static_cast<size_t>(j)]] = -c;
    }
    if (rb < 0.0) {
      row = -row;
      rb = -rb;
      if (rel[static_cast<size_t>(r)] == Relation::LE)
        rel[static_cast<size_t>(r)] = Relation::GE;
      else if (rel[static_cast<size_t>(r)] == Relation::GE)
        rel[static_cast<size_t>(r)] = Relation::LE;
    }
    a.row(r) = row.transpose();
    b[r] = rb;
  }

  // column layout: structural | slack/surplus | artificial | rhs
  Index nslack = 0, nart = 0;
  for (Index r = 0; r < nrow; ++r) {
    if (rel[static_cast<size_t>(r)] != Relation::EQ) ++nslack;
    if (rel[static_cast<size_t>(r)] != Relation::LE) ++nart;
  }
  const Index total = ncols_struct + nslack + nart;
  Tableau tab = Tableau::Zero(nrow + 1, total + 1);
  tab.block(0, 0, nrow, ncols_struct) = a;
  tab.block(0, total, nrow, 1) = b;

  std::vector<Index> basis(static_cast<size_t>(nrow), -1);
  Index scol = ncols_struct, acol = ncols_struct + nslack;
  const Index art_begin = acol;
  for (Index r = 0; r < nrow; ++r) {
    switch (rel[static_cast<size_t>(r)]) {
      case Relation::LE:
        tab(r, scol) = 1.0;
        basis[static_cast<size_t>(r)] = scol++;
        break;
      case Relation::GE:
        tab(r, scol) = -1.0;
        ++scol;
        tab(r, acol) = 1.0;
        basis[static_cast<size_t>(r)] = acol++;
        break;
      case Relation::EQ:
        tab(r, acol) = 1.0;
        basis[static_cast<size_t>(r)] = acol++;
        break;
    }
  }

  const long max_iter = 20000 + 200L * static_cast<long>(nrow + total);
  bool hit_cap = false;

  // phase 1: minimize the sum of artificials
  if (nart > 0) {
    for (Index j = art_begin; j < total; ++j) tab(nrow, j) = 1.0;
    for (Index r = 0; r < nrow; ++r)
      if (basis[static_cast<size_t>(r)] >= art_begin) tab.row(nrow) -= tab.row(r);
    std::vector<char> allowed(static_cast<size_t>(total), 1);
    if (!run_simplex(tab, basis, allowed, max_iter, &hit_cap)) {
      out.message = "phase 1 reported an unbounded direction";
      return out;
    }
    if (hit_cap) {
      out.message = "phase 1 iteration cap reached";
      return out;
    }
    if (-tab(nrow, total) > kPhase1Tol) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // remove artificials still basic at zero: pivot them out where possible,
    // otherwise the row is redundant and can be neutralized
    for (Index r = 0; r < nrow; ++r) {
      if (basis[static_cast<size_t>(r)] < art_begin) continue;
      Index piv_col = -1;
      for (Index j = 0; j < art_begin; ++j)
        if (std::abs(tab(r, j)) > kPivotTol) {
          piv_col = j;
          break;
        }
      if (piv_col >= 0) {
        const double piv = tab(r, piv_col);
        tab.row(r) /= piv;
        for (Index rr = 0; rr <= nrow; ++rr) {
          if (rr == r) continue;
          const double f = tab(rr, piv_col);
          if (f != 0.0) tab.row(rr) -= f * tab.row(r);
        }
        basis[static_cast<size_t>(r)] = piv_col;
      } else {
        tab.row(r).setZero();  // redundant row
      }
    }
  }

  // phase 2: minimize -objective (for maximization) over y
  tab.row(nrow).setZero();
  Vector q = Vector::Zero(total);
  for (Index j = 0; j < nvar; ++j) {
    const double c = lp.maximize ? -lp.objective[j] : lp.objective[j];
    q[pos_col[static_cast<size_t>(j)]] = c;
    if (neg_col[static_cast<size_t>(j)] >= 0) q[neg_col[static_cast<size_t>(j)]] = -c;
  }
  tab.block(nrow, 0, 1, total) = q.transpose();
  for (Index r = 0; r < nrow; ++r) {
    const Index bj = basis[static_cast<size_t>(r)];
    if (bj >= 0 && bj < total && q[bj] != 0.0) tab.row(nrow) -= q[bj] * tab.row(r);
  }
  std::vector<char> allowed(static_cast<size_t>(total), 1);
  for (Index j = art_begin; j < total; ++j) allowed[static_cast<size_t>(j)] = 0;
  if (!run_simplex(tab, basis, allowed, max_iter, &hit_cap)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  if (hit_cap) {
    out.message = "phase 2 iteration cap reached";
    return out;
  }

  // recover x from the basic solution
  Vector y = Vector::Zero(total);
  for (Index r = 0; r < nrow; ++r) {
    const Index bj = basis[static_cast<size_t>(r)];
    if (bj >= 0 && bj < total) y[bj] = tab(r, total);
  }
  Vector x = shift;
  for (Index j = 0; j < nvar; ++j) {
    x[j] += y[pos_col[static_cast<size_t>(j)]];
    if (neg_col[static_cast<size_t>(j)] >= 0) x[j] -= y[neg_col[static_cast<size_t>(j)]];
  }

  const double viol = max_violation(lp, x);
  if (viol > tol::lp_audit) {
    out.message = "solution failed the feasibility audit (violation " + std::to_string(viol) + ")";
    return out;
  }
  out.status = LpStatus::Optimal;
  out.solution = x;
  out.objective = lp.objective.dot(x);
  return out;
}

double max_violation(const LinearProgram& lp, const Vector& x) {
  double worst = 0.0;
  for (Index r = 0; r < lp.row_count(); ++r) {
    const double lhs = lp.rows.row(r).dot(x);
    double v = 0.0;
    switch (lp.relations[static_cast<size_t>(r)]) {
      case Relation::LE: v = lhs - lp.rhs[r]; break;
      case Relation::GE: v = lp.rhs[r] - lhs; break;
      case Relation::EQ: v = std::abs(lhs - lp.rhs[r]); break;
    }
    worst = std::max(worst, v);
  }
  for (Index j = 0; j < lp.variables(); ++j)
    if (lp.lower[j] != kNegInf) worst = std::max(worst, lp.lower[j] - x[j]);
  return worst;
}

std::string dump(const LinearProgram& lp) {
  std::ostringstream os;
  os << (lp.maximize ? "maximize" : "minimize");
  for (Index j = 0; j < lp.variables(); ++j) os << ' ' << lp.objective[j];
  os << '\n';
  for (Index r = 0; r < lp.row_count(); ++r) {
    if (!lp.row_names.empty()) os << lp.row_names[static_cast<size_t>(r)] << ": ";
    for (Index j = 0; j < lp.variables(); ++j) os << lp.rows(r, j) << ' ';
    switch (lp.relations[static_cast<size_t>(r)]) {
      case Relation::LE: os << "<= "; break;
      case Relation::GE: os << ">= "; break;
      case Relation::EQ: os << "== "; break;
    }
    os << lp.rhs[r] << '\n';
  }
  os << "lower:";
  for (Index j = 0; j < lp.variables(); ++j) {
    os << ' ';
    if (lp.lower[j] == kNegInf)
      os << "free";
    else
      os << lp.lower[j];
  }
  os << '\n';
  return os.str();
}

std::vector<WeightRow> certain_rows(const PerformanceMatrix& perf, const PreferenceInfo& prefs) {
  check_preferences(prefs, perf.alternatives());
  std::vector<WeightRow> rows;
  const Matrix& g = perf.values();
  auto diff = [&](Index a, Index b) { return Vector((g.row(a) - g.row(b)).transpose()); };

  for (const auto& [a, b] : prefs.certain_strict) {
    rows.push_back({diff(a, b), false, true,
                    "strict " + perf.label(a) + ">" + perf.label(b)});
  }
  for (const auto& [a, b] : prefs.certain_indiff) {
    rows.push_back({diff(a, b), true, false,
                    "indiff " + perf.label(a) + "=" + perf.label(b)});
  }
  for (const auto& q : prefs.certain_intensity) {
    // (a over b) exceeds (c over d) by the margin, and (c over d) itself is positive
    rows.push_back({Vector(diff(q.a, q.b) - diff(q.c, q.d)), false, true,
                    "intensity (" + perf.label(q.a) + "," + perf.label(q.b) + ")>(" +
                        perf.label(q.c) + "," + perf.label(q.d) + ")"});
    rows.push_back({diff(q.c, q.d), false, true,
                    "intensity base " + perf.label(q.c) + ">" + perf.label(q.d)});
  }
  return rows;
}

CompatibilityResult compatibility_check(const PerformanceMatrix& perf, const PreferenceInfo& prefs,
                                        double cutoff) {
  CompatibilityResult res;
  res.statements.certain_strict = prefs.certain_strict;
  res.statements.certain_indiff = prefs.certain_indiff;
  res.statements.certain_intensity = prefs.certain_intensity;

  const auto wrows = certain_rows(perf, prefs);
  const Index n = perf.criteria();
  const Index nv = n + 1;  // weights and epsilon
  const Index nr = static_cast<Index>(wrows.size()) + 2;  // + simplex sum + epsilon cap

  LinearProgram lp;
  lp.maximize = true;
  lp.objective = Vector::Zero(nv);
  lp.objective[n] = 1.0;  // epsilon
  lp.rows = Matrix::Zero(nr, nv);
  lp.rhs = Vector::Zero(nr);
  lp.relations.assign(static_cast<size_t>(nr), Relation::GE);
  lp.lower = Vector::Zero(nv);
  lp.lower[n] = -1.0;  // epsilon may go negative to witness incompatibility
  lp.row_names.reserve(static_cast<size_t>(nr));

  Index r = 0;
  for (const auto& wr : wrows) {
    lp.rows.block(r, 0, 1, n) = wr.coeffs.transpose();
    if (wr.equality) {
      lp.relations[static_cast<size_t>(r)] = Relation::EQ;
    } else {
      lp.rows(r, n) = -1.0;  // coeffs . w - eps >= 0
    }
    lp.row_names.push_back(wr.name);
    ++r;
  }
  lp.rows.block(r, 0, 1, n).setOnes();
  lp.relations[static_cast<size_t>(r)] = Relation::EQ;
  lp.rhs[r] = 1.0;
  lp.row_names.push_back("simplex sum");
  ++r;
  lp.rows(r, n) = 1.0;  // epsilon cap
  lp.relations[static_cast<size_t>(r)] = Relation::LE;
  lp.rhs[r] = 1.0;
  lp.row_names.push_back("epsilon cap");

  const LpOutcome lpo = solve(lp);
  res.status = lpo.status;
  if (lpo.status == LpStatus::Optimal) {
    res.epsilon_star = lpo.objective;
    Vector w = lpo.solution.head(n);
    w = w.cwiseMax(0.0);
    w /= w.sum();
    res.weights = w;
    res.compatible = res.epsilon_star > cutoff;
  }
  return res;
}

}  // namespace smaa
