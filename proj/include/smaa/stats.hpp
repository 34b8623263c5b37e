#pragma once

#include <string>
#include <vector>

#include "smaa/types.hpp"

//! Distances between index matrices, the correct-comparison rate, and
//! two-sample Kolmogorov-Smirnov tests with the sequential testing protocol.
namespace smaa {

inline constexpr Index kRaiDistanceColumns = 3;  // default number of top ranks compared
inline constexpr double kKsAlphaDefault = 0.05;
inline constexpr double kKsPValueFloor = 1e-300;  // p-values are clamped here

//! Average L1 gap over the first s rank rows: (sum_{r<=s} sum_a |b1 - b2|) / s.
double rai_distance(const Matrix& rai1, const Matrix& rai2, Index s = kRaiDistanceColumns);

//! Mean absolute off-diagonal gap: sum_{a != b} |p1 - p2| / (m (m-1)).
double pwi_distance(const Matrix& pwi1, const Matrix& pwi2);

//! Share of unordered pairs outside the excluded set on which the two matrices
//! agree about which alternative is more probably preferred ((p1 - 1/2) and
//! (p2 - 1/2) not of opposite sign).
double correct_percentage(const Matrix& pwi_dm, const Matrix& pwi_method,
                          const std::vector<Pair>& excluded, Index m);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int h = 0;  // 1 = reject at the given level
};

//! Two-sided test of equal distributions: D = sup|F1 - F2| with the asymptotic
//! Kolmogorov-series p-value.
KsResult ks_equal(const std::vector<double>& sample1, const std::vector<double>& sample2,
                  double alpha = kKsAlphaDefault);

//! One-sided test; h = 1 supports "sample1 concentrated on smaller values"
//! (its empirical CDF lies above): D+ = sup(F1 - F2), p = exp(-2 D+^2 n1 n2/(n1+n2)).
KsResult ks_greater(const std::vector<double>& sample1, const std::vector<double>& sample2,
                    double alpha = kKsAlphaDefault);

//! Sequential protocol over method distance samples: test each unordered pair
//! for equality; when equality is rejected, run both directed one-sided tests.
//! Cells that were never run carry run = false.
struct KsCell {
  bool run = false;
  KsResult result;
};

struct KsTable {
  std::vector<std::string> names;
  std::vector<std::vector<KsCell>> equal;    // upper triangle (i < j)
  std::vector<std::vector<KsCell>> greater;  // full off-diagonal grid
};

KsTable sequential_ks(const std::vector<std::string>& names,
                      const std::vector<std::vector<double>>& samples,
                      double alpha = kKsAlphaDefault);

//! Cell text in the decision-table format: "h/p" like "1/2.96e-23", "-" if not run.
std::string ks_cell_text(const KsCell& cell);

}  // namespace smaa
