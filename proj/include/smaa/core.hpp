#pragma once

#include "smaa/rng.hpp"
#include "smaa/types.hpp"

//! Weighted-sum model primitives: utilities, dominance screening, simplex
//! geometry helpers.
namespace smaa {

//! Weighted-sum utility of one alternative row under weight vector w.
inline double evaluate(const Vector& performance_row, const Vector& w) {
  if (performance_row.size() != w.size())
    throw std::invalid_argument("evaluate: dimension mismatch");
  return performance_row.dot(w);
}

//! Utilities of every alternative under every sampled weight vector:
//! result(a, t) = U(a, w_t).  One matrix product, no loops.
inline Matrix utilities(const PerformanceMatrix& perf, const OmegaSample& omega) {
  if (perf.criteria() != omega.dimension())
    throw std::invalid_argument("utilities: criterion count mismatch");
  return perf.values() * omega.rows().transpose();
}

//! Utilities of every alternative under a single weight vector.
inline Vector utilities(const PerformanceMatrix& perf, const Vector& w) {
  if (perf.criteria() != w.size())
    throw std::invalid_argument("utilities: criterion count mismatch");
  return perf.values() * w;
}

//! Euclidean distance between two weight vectors.
inline double distance(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("distance: dimension mismatch");
  return (a - b).norm();
}

//! Arithmetic mean of the sampled weight vectors.
inline Vector barycenter(const OmegaSample& omega) {
  return omega.rows().colwise().mean().transpose();
}

//! Distances from every sample element to a reference weight vector.
inline Vector distance_profile(const OmegaSample& omega, const Vector& reference) {
  if (reference.size() != omega.dimension())
    throw std::invalid_argument("distance profile: dimension mismatch");
  return (omega.rows().rowwise() - reference.transpose()).rowwise().norm();
}

//! Random m x n performance matrix with U[0,1] entries and no dominated or
//! duplicate alternatives.  The whole matrix is redrawn until it is clean;
//! gives up after kMatrixRejectionCap redraws.
PerformanceMatrix random_nondominated_matrix(Index m, Index n, RngStream& rng);

}  // namespace smaa
