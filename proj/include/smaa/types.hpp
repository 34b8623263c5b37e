#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

//! Core dense types and validated value objects shared by every module.
//!
//! Conventions: alternatives are rows of the performance matrix, criteria are
//! columns, weight vectors live on the unit simplex, and a sample of weight
//! vectors is stored row-wise so utilities come out of a single matrix product.
namespace smaa {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Numeric policy, shared across modules.
namespace tol {
inline constexpr double weight_sum = 1e-9;       // simplex sum check on weight vectors
inline constexpr double mass = 1e-8;             // mass distributions and polytope membership
inline constexpr double lp_audit = 1e-7;         // independent feasibility audit of LP solutions
inline constexpr double compatibility = 1e-6;    // default cutoff: epsilon* above it counts as compatible
inline constexpr double utility_tie = 1e-12;     // |U(a)-U(b)| at or below it is a tie
inline constexpr double distance_tie = 1e-12;    // equal-distance grouping when ordering masses
}  // namespace tol

// Fraction of epsilon* used when a strict inequality has to become a closed
// half-space for sampling.
inline constexpr double kEpsilonShrink = 0.01;

// Cap on whole-matrix redraws when rejecting dominated alternatives.
inline constexpr int kMatrixRejectionCap = 100000;

//! Throws unless w is a simplex point: nonnegative, sums to 1 within tolerance.
inline void check_weight_vector(const Vector& w) {
  if (w.size() == 0) throw std::invalid_argument("weight vector: empty");
  if ((w.array() < 0.0).any())
    throw std::invalid_argument("weight vector: negative component");
  if (std::abs(w.sum() - 1.0) > tol::weight_sum)
    throw std::invalid_argument("weight vector: components must sum to 1");
}

//! Throws unless p is a probability mass vector within the mass tolerance.
inline void check_mass_distribution(const Vector& p) {
  if (p.size() == 0) throw std::invalid_argument("mass distribution: empty");
  if ((p.array() < -tol::mass).any())
    throw std::invalid_argument("mass distribution: negative mass");
  if (std::abs(p.sum() - 1.0) > tol::mass)
    throw std::invalid_argument("mass distribution: masses must sum to 1");
}

//! True when row a is weakly dominated by row b with at least one strict gap,
//! or the two rows coincide exactly.
inline bool dominated_or_equal(const Vector& a, const Vector& b) {
  if ((a.array() > b.array()).any()) return false;  // a beats b somewhere
  // here: b >= a componentwise
  return true;  // either b strictly better somewhere or rows identical
}

//! Performance matrix: one row per alternative, one column per criterion.
//! Entries live in [0,1] and no alternative may dominate another (weak
//! dominance with a strict gap, or duplicate rows, are both rejected).
class PerformanceMatrix {
 public:
  PerformanceMatrix(Matrix values, std::vector<std::string> labels = {})
      : values_(std::move(values)), labels_(std::move(labels)) {
    if (values_.rows() < 2 || values_.cols() < 1)
      throw std::invalid_argument("performance matrix: need >=2 alternatives, >=1 criterion");
    if ((values_.array() < 0.0).any() || (values_.array() > 1.0).any())
      throw std::invalid_argument("performance matrix: entries must lie in [0,1]");
    if (!labels_.empty() && static_cast<Index>(labels_.size()) != values_.rows())
      throw std::invalid_argument("performance matrix: label count mismatch");
    for (Index a = 0; a < values_.rows(); ++a)
      for (Index b = 0; b < values_.rows(); ++b)
        if (a != b && dominated_or_equal(values_.row(a).transpose(), values_.row(b).transpose()))
          throw std::invalid_argument("performance matrix: alternative " + label(a) +
                                      " is dominated by " + label(b));
  }

  Index alternatives() const { return values_.rows(); }
  Index criteria() const { return values_.cols(); }
  const Matrix& values() const { return values_; }
  Vector row(Index a) const { return values_.row(a).transpose(); }

  std::string label(Index a) const {
    if (!labels_.empty()) return labels_[static_cast<size_t>(a)];
    return "a" + std::to_string(a + 1);
  }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  Matrix values_;
  std::vector<std::string> labels_;
};

//! Sample of weight vectors, one per row, every row a simplex point.
class OmegaSample {
 public:
  explicit OmegaSample(Matrix rows) : rows_(std::move(rows)) {
    if (rows_.rows() == 0) throw std::invalid_argument("omega sample: empty");
    for (Index t = 0; t < rows_.rows(); ++t) check_weight_vector(rows_.row(t).transpose());
  }

  Index size() const { return rows_.rows(); }
  Index dimension() const { return rows_.cols(); }
  const Matrix& rows() const { return rows_; }
  Vector point(Index t) const { return rows_.row(t).transpose(); }

  //! Appends one more weight vector (used when a known model must be a sample member).
  void append(const Vector& w) {
    check_weight_vector(w);
    if (w.size() != rows_.cols()) throw std::invalid_argument("omega sample: dimension mismatch");
    rows_.conservativeResize(rows_.rows() + 1, Eigen::NoChange);
    rows_.row(rows_.rows() - 1) = w.transpose();
  }

 private:
  Matrix rows_;
};

//! Probability masses over the elements of an OmegaSample.
class MassDistribution {
 public:
  explicit MassDistribution(Vector p) : p_(std::move(p)) {
    check_mass_distribution(p_);
  }

  Index size() const { return p_.size(); }
  const Vector& masses() const { return p_; }
  double operator[](Index t) const { return p_[t]; }

 private:
  Vector p_;
};

// Preference statements.  Pairs are (a, b) row indices into the performance
// matrix; quads are (a, b, c, d) meaning "a over b more intensely than c over d".
using Pair = std::pair<Index, Index>;
struct Quad {
  Index a, b, c, d;
};

//! Everything the decision maker has stated.  Certain statements constrain the
//! weight space directly; uncertain ones constrain masses over a sample.
struct PreferenceInfo {
  std::vector<Pair> certain_strict;        // a strictly preferred to b
  std::vector<Pair> certain_indiff;        // a indifferent to b
  std::vector<Quad> certain_intensity;     // (a,b) preferred more intensely than (c,d)
  std::vector<Pair> uncertain_strict;      // a probably preferred to b
  std::vector<Pair> uncertain_indiff;      // two-sided: a and b probably indifferent
  std::vector<Quad> uncertain_intensity;   // probable intensity comparison

  bool empty() const {
    return certain_strict.empty() && certain_indiff.empty() && certain_intensity.empty() &&
           uncertain_strict.empty() && uncertain_indiff.empty() && uncertain_intensity.empty();
  }
  bool has_certain() const {
    return !(certain_strict.empty() && certain_indiff.empty() && certain_intensity.empty());
  }
  bool has_uncertain() const {
    return !(uncertain_strict.empty() && uncertain_indiff.empty() && uncertain_intensity.empty());
  }
};

inline void check_pair(const Pair& p, Index m, const char* what) {
  if (p.first < 0 || p.first >= m || p.second < 0 || p.second >= m || p.first == p.second)
    throw std::invalid_argument(std::string(what) + ": bad alternative pair");
}

inline void check_quad(const Quad& q, Index m, const char* what) {
  check_pair({q.a, q.b}, m, what);
  check_pair({q.c, q.d}, m, what);
}

//! Validates all indices of a preference set against an m-alternative instance.
inline void check_preferences(const PreferenceInfo& info, Index m) {
  for (const auto& p : info.certain_strict) check_pair(p, m, "certain strict");
  for (const auto& p : info.certain_indiff) check_pair(p, m, "certain indifference");
  for (const auto& q : info.certain_intensity) check_quad(q, m, "certain intensity");
  for (const auto& p : info.uncertain_strict) check_pair(p, m, "uncertain strict");
  for (const auto& p : info.uncertain_indiff) check_pair(p, m, "uncertain indifference");
  for (const auto& q : info.uncertain_intensity) check_quad(q, m, "uncertain intensity");
}

}  // namespace smaa
