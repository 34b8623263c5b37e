#pragma once

#include <vector>

#include "smaa/types.hpp"

//! Comparison baselines: a pairwise logistic preference model fitted to the
//! elicited statements, and the uniform distribution over the sample.
namespace smaa {

struct LogisticModel {
  Vector beta;  // one coefficient per criterion, no intercept
  bool converged = false;
  int iterations = 0;
  double grad_norm = 0.0;
};

inline constexpr int kLogisticIterationCap = 100;
inline constexpr double kLogisticGradTol = 1e-8;

//! P(a weakly preferred to b) under the model: a logistic link on the
//! criterion-wise performance gap beta . (g(a) - g(b)).
double logistic_probability(const LogisticModel& model, const Vector& row_a, const Vector& row_b);

//! Maximum-likelihood fit of the logistic model to oriented statements (each
//! pair means "first preferred to second") by plain iteratively reweighted
//! least squares, the standard routine of common statistical software: full
//! undamped Newton steps, singular normal equations solved in the
//! minimum-norm least-squares sense, no regularization.  On small separable
//! samples the likelihood has no finite maximizer and the returned
//! coefficients saturate at whatever the iteration cap reaches — that
//! behavior is deliberate, matching how the baseline is used in practice.
LogisticModel fit_logistic(const PerformanceMatrix& perf, const std::vector<Pair>& statements);

//! The negative log-likelihood the fit descends: sum of logistic losses over
//! the statements.  Exposed so external searches can be compared.
double logistic_objective(const PerformanceMatrix& perf, const std::vector<Pair>& statements,
                          const Vector& beta);

//! Pairwise preference probabilities for every ordered pair; diagonal zero.
//! This baseline yields pair probabilities only — no rank distribution exists.
Matrix logistic_pwi(const LogisticModel& model, const PerformanceMatrix& perf);

//! Mass 1/|omega| on every sampled weight vector.
MassDistribution uniform_masses(const OmegaSample& omega);

}  // namespace smaa
