#include "smaa/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace smaa {

namespace {

// log(1 + exp(-t)) without overflow on either tail
double logistic_loss(double t) {
  if (t >= 0.0) return std::log1p(std::exp(-t));
  return -t + std::log1p(std::exp(t));
}

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

Matrix statement_gaps(const PerformanceMatrix& perf, const std::vector<Pair>& statements) {
  Matrix x(static_cast<Index>(statements.size()), perf.criteria());
  for (std::size_t i = 0; i < statements.size(); ++i) {
    check_pair(statements[i], perf.alternatives(), "logistic statement");
    x.row(static_cast<Index>(i)) =
        (perf.row(statements[i].first) - perf.row(statements[i].second)).transpose();
  }
  return x;
}

}  // namespace

double logistic_probability(const LogisticModel& model, const Vector& row_a, const Vector& row_b) {
  if (row_a.size() != model.beta.size() || row_b.size() != model.beta.size())
    throw std::invalid_argument("logistic probability: dimension mismatch");
  return sigmoid(model.beta.dot(row_a - row_b));
}

double logistic_objective(const PerformanceMatrix& perf, const std::vector<Pair>& statements,
                          const Vector& beta) {
  const Matrix x = statement_gaps(perf, statements);
  const Vector t = x * beta;
  double loss = 0.0;
  for (Index i = 0; i < t.size(); ++i) loss += logistic_loss(t(i));
  return loss;
}

LogisticModel fit_logistic(const PerformanceMatrix& perf, const std::vector<Pair>& statements) {
  if (statements.empty()) throw std::invalid_argument("fit_logistic: need at least one statement");

  const Index n = perf.criteria();
  const Matrix x = statement_gaps(perf, statements);

  LogisticModel model;
  model.beta = Vector::Zero(n);

  for (int iter = 0; iter < kLogisticIterationCap; ++iter) {
    const Vector t = x * model.beta;
    Vector grad = Vector::Zero(n);  // gradient of the log-likelihood: all labels are "preferred"
    Matrix hess = Matrix::Zero(n, n);
    for (Index i = 0; i < t.size(); ++i) {
      const double s = sigmoid(t(i));
      grad += (1.0 - s) * x.row(i).transpose();
      hess += s * (1.0 - s) * x.row(i).transpose() * x.row(i);
    }
    model.grad_norm = grad.norm();
    model.iterations = iter;
    if (model.grad_norm < kLogisticGradTol) {
      model.converged = true;
      return model;
    }
    // full Newton step; rank-deficient curvature is solved minimum-norm
    const Vector step = hess.completeOrthogonalDecomposition().solve(grad);
    if (!step.allFinite() || !(model.beta + step).allFinite()) break;
    model.beta += step;
  }
  {
    const Vector t = x * model.beta;
    Vector grad = Vector::Zero(n);
    for (Index i = 0; i < t.size(); ++i) grad += (1.0 - sigmoid(t(i))) * x.row(i).transpose();
    model.grad_norm = grad.norm();
    model.converged = model.grad_norm < kLogisticGradTol;
  }
  return model;
}

Matrix logistic_pwi(const LogisticModel& model, const PerformanceMatrix& perf) {
  const Index m = perf.alternatives();
  Matrix p = Matrix::Zero(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      if (a == b) continue;
      p(a, b) = logistic_probability(model, perf.row(a), perf.row(b));
    }
  return p;
}

MassDistribution uniform_masses(const OmegaSample& omega) {
  return MassDistribution(Vector::Constant(omega.size(), 1.0 / static_cast<double>(omega.size())));
}

}  // namespace smaa
