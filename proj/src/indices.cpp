#include "smaa/indices.hpp"

namespace smaa {

Index rank_of(Index a, const Vector& w, const PerformanceMatrix& perf) {
  if (a < 0 || a >= perf.alternatives()) throw std::invalid_argument("rank_of: bad alternative");
  const Vector u = utilities(perf, w);
  Index better = 0;
  for (Index x = 0; x < perf.alternatives(); ++x) {
    if (x == a) continue;
    const double gap = u[x] - u[a];
    if (gap > tol::utility_tie || (std::abs(gap) <= tol::utility_tie && x < a)) ++better;
  }
  return better + 1;
}

Matrix rai(const PerformanceMatrix& perf, const OmegaSample& omega, const MassDistribution& mass) {
  const Index m = perf.alternatives();
  if (omega.size() != mass.size())
    throw std::invalid_argument("rai: sample and mass sizes differ");
  const Matrix u = utilities(perf, omega);  // m x N
  Matrix b = Matrix::Zero(m, m);            // rank-major: b(r, a)
  for (Index t = 0; t < omega.size(); ++t) {
    const double p = mass[t];
    if (p == 0.0) continue;
    for (Index a = 0; a < m; ++a) {
      Index better = 0;
      for (Index x = 0; x < m; ++x) {
        if (x == a) continue;
        const double gap = u(x, t) - u(a, t);
        if (gap > tol::utility_tie || (std::abs(gap) <= tol::utility_tie && x < a)) ++better;
      }
      b(better, a) += p;
    }
  }
  return b;
}

Matrix pwi(const PerformanceMatrix& perf, const OmegaSample& omega, const MassDistribution& mass) {
  const Index m = perf.alternatives();
  if (omega.size() != mass.size())
    throw std::invalid_argument("pwi: sample and mass sizes differ");
  const Matrix u = utilities(perf, omega);
  Matrix p = Matrix::Zero(m, m);
  for (Index t = 0; t < omega.size(); ++t) {
    const double w = mass[t];
    if (w == 0.0) continue;
    for (Index a = 0; a < m; ++a)
      for (Index b = a + 1; b < m; ++b) {
        const double gap = u(a, t) - u(b, t);
        if (gap > tol::utility_tie)
          p(a, b) += w;
        else if (gap < -tol::utility_tie)
          p(b, a) += w;
        else {
          p(a, b) += 0.5 * w;
          p(b, a) += 0.5 * w;
        }
      }
  }
  return p;
}

bool is_total_order(const Matrix& pwi_matrix) {
  const Index m = pwi_matrix.rows();
  if (pwi_matrix.cols() != m) return false;
  const double t = 1e-9;
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      if (a == b) continue;
      const double v = pwi_matrix(a, b);
      if (std::abs(v) > t && std::abs(v - 1.0) > t) return false;  // binary entries
      if (std::abs(v + pwi_matrix(b, a) - 1.0) > t) return false;  // complementary
    }
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      for (Index c = 0; c < m; ++c) {
        if (a == b || b == c || a == c) continue;
        // transitivity: p(a,b) + p(b,c) <= 1 + p(a,c)
        if (pwi_matrix(a, b) + pwi_matrix(b, c) > 1.0 + pwi_matrix(a, c) + t) return false;
      }
  return true;
}

}  // namespace smaa
