#include "smaa/dm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace smaa {

const char* to_string(DmKind kind) {
  switch (kind) {
    case DmKind::Delta: return "delta";
    case DmKind::Normal: return "normal";
    case DmKind::Exponential: return "exponential";
    case DmKind::InverseDistance: return "inverse_distance";
    case DmKind::Roc: return "roc";
  }
  throw std::invalid_argument("unknown DM kind");
}

DmKind dm_kind_from_string(const std::string& text) {
  if (text == "delta") return DmKind::Delta;
  if (text == "normal") return DmKind::Normal;
  if (text == "exponential") return DmKind::Exponential;
  if (text == "inverse_distance") return DmKind::InverseDistance;
  if (text == "roc") return DmKind::Roc;
  throw std::invalid_argument("unknown DM kind: " + text);
}

LambdaRange dm_lambda_range(DmKind kind) {
  switch (kind) {
    case DmKind::Delta: return {0.0, 0.0, false};
    case DmKind::Normal: return {0.01, 0.2, false};
    case DmKind::Exponential: return {8.0, 13.0, true};
    case DmKind::InverseDistance: return {2.5, 7.5, false};
    case DmKind::Roc: return {10.0, 100.0, true};
  }
  throw std::invalid_argument("unknown DM kind");
}

bool dm_lambda_in_range(DmKind kind, double lambda, Index omega_size) {
  if (kind == DmKind::Delta) return true;
  const LambdaRange range = dm_lambda_range(kind);
  if (lambda < range.lo || lambda > range.hi) return false;
  if (range.integer && lambda != std::floor(lambda)) return false;
  if (kind == DmKind::Roc && lambda > static_cast<double>(omega_size)) return false;
  return true;
}

namespace {

void check_lambda(const DmDistributionSpec& spec, Index n_points) {
  const double lambda = spec.lambda;
  switch (spec.kind) {
    case DmKind::Delta:
      return;
    case DmKind::Normal:
      if (!(lambda > 0.0)) throw std::invalid_argument("normal DM needs lambda > 0");
      return;
    case DmKind::Exponential:
      if (!(lambda > 0.0) || lambda != std::floor(lambda))
        throw std::invalid_argument("exponential DM needs a positive integer lambda");
      return;
    case DmKind::InverseDistance:
      if (!(lambda > 0.0)) throw std::invalid_argument("inverse-distance DM needs lambda > 0");
      return;
    case DmKind::Roc:
      if (!(lambda >= 1.0) || lambda != std::floor(lambda))
        throw std::invalid_argument("ROC DM needs a positive integer lambda");
      if (lambda > static_cast<double>(n_points))
        throw std::invalid_argument("ROC DM lambda exceeds the sample size");
      return;
  }
  throw std::invalid_argument("unknown DM kind");
}

Vector delta_masses(const DmDistributionSpec& spec, const OmegaSample& omega) {
  // All mass on the reference vector, which must be one of the sample points.
  const Index n = omega.size();
  Index hit = -1;
  for (Index t = 0; t < n; ++t) {
    if ((omega.point(t) - spec.reference).lpNorm<Eigen::Infinity>() <= 1e-12) {
      hit = t;
      break;
    }
  }
  if (hit < 0) throw std::invalid_argument("delta DM: reference vector is not in the sample");
  Vector p = Vector::Zero(n);
  p(hit) = 1.0;
  return p;
}

Vector roc_masses(double lambda, const Vector& dist) {
  const Index n = dist.size();
  const auto k = static_cast<Index>(lambda);
  // Sort ascending by distance, index as tie-break, and give the h-th closest
  // point the ROC weight (1/k) * sum_{j=h..k} 1/j; the rest get zero.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index x, Index y) {
    if (dist(x) != dist(y)) return dist(x) < dist(y);
    return x < y;
  });
  Vector p = Vector::Zero(n);
  double tail = 0.0;  // sum_{j=h..k} 1/j, built from the far end
  std::vector<double> weight(static_cast<std::size_t>(k));
  for (Index h = k; h >= 1; --h) {
    tail += 1.0 / static_cast<double>(h);
    weight[static_cast<std::size_t>(h - 1)] = tail / static_cast<double>(k);
  }
  for (Index h = 0; h < k; ++h) p(order[static_cast<std::size_t>(h)]) = weight[static_cast<std::size_t>(h)];
  return p;
}

}  // namespace

MassDistribution dm_masses(const DmDistributionSpec& spec, const OmegaSample& omega) {
  const Index n = omega.size();
  if (n == 0) throw std::invalid_argument("dm_masses: empty sample");
  check_lambda(spec, n);
  if (spec.kind == DmKind::Delta) return MassDistribution(delta_masses(spec, omega));

  if (spec.reference.size() != omega.dimension())
    throw std::invalid_argument("dm_masses: reference dimension mismatch");
  const Vector dist = distance_profile(omega, spec.reference);
  Vector p(n);
  switch (spec.kind) {
    case DmKind::Normal:
      p = (-dist.array().square() / (2.0 * spec.lambda * spec.lambda)).exp();
      break;
    case DmKind::Exponential:
      p = (-spec.lambda * dist.array()).exp();
      break;
    case DmKind::InverseDistance: {
      // d = 0 would blow up; clamp to a tiny fraction of the smallest positive
      // distance so an exact hit still dominates by orders of magnitude.
      double min_pos = std::numeric_limits<double>::infinity();
      for (Index t = 0; t < n; ++t)
        if (dist(t) > 0.0) min_pos = std::min(min_pos, dist(t));
      if (!std::isfinite(min_pos)) min_pos = 1.0;  // every point sits on the reference
      const double floor_d = min_pos * 1e-6;
      for (Index t = 0; t < n; ++t) p(t) = std::pow(std::max(dist(t), floor_d), -spec.lambda);
      break;
    }
    case DmKind::Roc:
      return MassDistribution(roc_masses(spec.lambda, dist));
    case DmKind::Delta:
      break;  // handled above
  }
  const double total = p.sum();
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::runtime_error("dm_masses: degenerate normalisation");
  return MassDistribution(p / total);
}

PairwiseVerdict dm_relation(const MassDistribution& dm_mass, const OmegaSample& omega,
                            const PerformanceMatrix& perf, const Pair& pair) {
  check_pair(pair, perf.alternatives(), "dm_relation");
  if (dm_mass.size() != omega.size())
    throw std::invalid_argument("dm_relation: mass/sample size mismatch");
  const Vector& p = dm_mass.masses();
  const Vector ua = omega.rows() * perf.row(pair.first);
  const Vector ub = omega.rows() * perf.row(pair.second);
  double mass_a = 0.0, mass_b = 0.0;  // weak counts: ties contribute to both
  for (Index t = 0; t < omega.size(); ++t) {
    if (ua(t) >= ub(t)) mass_a += p(t);
    if (ub(t) >= ua(t)) mass_b += p(t);
  }
  if (std::abs(mass_a - mass_b) <= tol::utility_tie) return PairwiseVerdict::Indifferent;
  return mass_a > mass_b ? PairwiseVerdict::APreferred : PairwiseVerdict::BPreferred;
}

PreferenceInfo Elicitation::to_preferences() const {
  PreferenceInfo info;
  for (const ElicitedStatement& s : statements) {
    if (s.indifferent)
      info.uncertain_indiff.push_back({s.a, s.b});
    else
      info.uncertain_strict.push_back({s.a, s.b});
  }
  return info;
}

Elicitation elicit_pairs(const PerformanceMatrix& perf, const OmegaSample& omega,
                         const MassDistribution& dm_mass, Index z) {
  const Index m = perf.alternatives();
  const Index max_pairs = m * (m - 1) / 2;
  if (z < 0 || z > max_pairs)
    throw std::invalid_argument("elicit_pairs: z outside [0, m(m-1)/2]");

  // Rank unordered pairs by how undecided the uniform distribution is.
  const MassDistribution uniform(Vector::Constant(omega.size(), 1.0 / static_cast<double>(omega.size())));
  const Matrix p = pwi(perf, omega, uniform);
  std::vector<Pair> order;
  order.reserve(static_cast<std::size_t>(max_pairs));
  for (Index a = 0; a < m; ++a)
    for (Index b = a + 1; b < m; ++b) order.push_back({a, b});
  std::stable_sort(order.begin(), order.end(), [&](const Pair& x, const Pair& y) {
    const double gx = std::abs(p(x.first, x.second) - p(x.second, x.first));
    const double gy = std::abs(p(y.first, y.second) - p(y.second, y.first));
    if (gx != gy) return gx < gy;
    return x < y;
  });

  Elicitation out;
  for (Index i = 0; i < z; ++i) {
    const Pair& pair = order[static_cast<std::size_t>(i)];
    out.pairs.push_back(pair);
    const PairwiseVerdict verdict = dm_relation(dm_mass, omega, perf, pair);
    ElicitedStatement s;
    if (verdict == PairwiseVerdict::Indifferent) {
      s.a = pair.first;
      s.b = pair.second;
      s.indifferent = true;
    } else if (verdict == PairwiseVerdict::APreferred) {
      s.a = pair.first;
      s.b = pair.second;
    } else {
      s.a = pair.second;
      s.b = pair.first;
    }
    out.statements.push_back(s);
  }
  return out;
}

}  // namespace smaa
