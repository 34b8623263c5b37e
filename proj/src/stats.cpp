#include "smaa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace smaa {

double rai_distance(const Matrix& rai1, const Matrix& rai2, Index s) {
  if (rai1.rows() != rai2.rows() || rai1.cols() != rai2.cols())
    throw std::invalid_argument("rai_distance: shape mismatch");
  if (s < 1 || s > rai1.rows()) throw std::invalid_argument("rai_distance: s outside [1, m]");
  double total = 0.0;
  for (Index r = 0; r < s; ++r)
    for (Index a = 0; a < rai1.cols(); ++a) total += std::abs(rai1(r, a) - rai2(r, a));
  return total / static_cast<double>(s);
}

double pwi_distance(const Matrix& pwi1, const Matrix& pwi2) {
  if (pwi1.rows() != pwi2.rows() || pwi1.cols() != pwi2.cols() || pwi1.rows() != pwi1.cols())
    throw std::invalid_argument("pwi_distance: shape mismatch");
  const Index m = pwi1.rows();
  if (m < 2) throw std::invalid_argument("pwi_distance: need >=2 alternatives");
  double total = 0.0;
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      if (a != b) total += std::abs(pwi1(a, b) - pwi2(a, b));
  return total / static_cast<double>(m * (m - 1));
}

double correct_percentage(const Matrix& pwi_dm, const Matrix& pwi_method,
                          const std::vector<Pair>& excluded, Index m) {
  if (pwi_dm.rows() != m || pwi_dm.cols() != m || pwi_method.rows() != m || pwi_method.cols() != m)
    throw std::invalid_argument("correct_percentage: shape mismatch");
  auto is_excluded = [&](Index a, Index b) {
    for (const Pair& p : excluded)
      if ((p.first == a && p.second == b) || (p.first == b && p.second == a)) return true;
    return false;
  };
  Index considered = 0, correct = 0;
  for (Index a = 0; a < m; ++a)
    for (Index b = a + 1; b < m; ++b) {
      if (is_excluded(a, b)) continue;
      ++considered;
      if ((pwi_dm(a, b) - 0.5) * (pwi_method(a, b) - 0.5) >= 0.0) ++correct;
    }
  if (considered == 0)
    throw std::invalid_argument("correct_percentage: every pair is excluded");
  return static_cast<double>(correct) / static_cast<double>(considered);
}

namespace {

// sup(F1 - F2) and sup(F2 - F1) of the right-continuous empirical CDFs,
// evaluated by sweeping the merged sorted supports
void ecdf_sup_gaps(std::vector<double> a, std::vector<double> b, double* sup_ab, double* sup_ba) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  *sup_ab = 0.0;
  *sup_ba = 0.0;
  while (i < a.size() || j < b.size()) {
    const double x = (j >= b.size() || (i < a.size() && a[i] <= b[j])) ? a[i] : b[j];
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    const double gap = static_cast<double>(i) / na - static_cast<double>(j) / nb;
    *sup_ab = std::max(*sup_ab, gap);
    *sup_ba = std::max(*sup_ba, -gap);
  }
}

// Kolmogorov tail Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2)
double kolmogorov_tail(double t) {
  if (t <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-320) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

double clamp_p(double p) { return std::min(1.0, std::max(kKsPValueFloor, p)); }

void check_samples(const std::vector<double>& s1, const std::vector<double>& s2) {
  if (s1.empty() || s2.empty()) throw std::invalid_argument("ks test: empty sample");
}

double effective_n(std::size_t n1, std::size_t n2) {
  return static_cast<double>(n1) * static_cast<double>(n2) / static_cast<double>(n1 + n2);
}

}  // namespace

KsResult ks_equal(const std::vector<double>& sample1, const std::vector<double>& sample2,
                  double alpha) {
  check_samples(sample1, sample2);
  double sup_ab = 0.0, sup_ba = 0.0;
  ecdf_sup_gaps(sample1, sample2, &sup_ab, &sup_ba);
  KsResult r;
  r.statistic = std::max(sup_ab, sup_ba);
  r.p_value = clamp_p(kolmogorov_tail(std::sqrt(effective_n(sample1.size(), sample2.size())) * r.statistic));
  r.h = r.p_value < alpha ? 1 : 0;
  return r;
}

KsResult ks_greater(const std::vector<double>& sample1, const std::vector<double>& sample2,
                    double alpha) {
  check_samples(sample1, sample2);
  double sup_ab = 0.0, sup_ba = 0.0;
  ecdf_sup_gaps(sample1, sample2, &sup_ab, &sup_ba);
  KsResult r;
  r.statistic = sup_ab;  // CDF of sample1 above: mass concentrated on smaller values
  r.p_value = clamp_p(std::exp(-2.0 * r.statistic * r.statistic *
                               effective_n(sample1.size(), sample2.size())));
  r.h = r.p_value < alpha ? 1 : 0;
  return r;
}

KsTable sequential_ks(const std::vector<std::string>& names,
                      const std::vector<std::vector<double>>& samples, double alpha) {
  if (names.size() != samples.size())
    throw std::invalid_argument("sequential_ks: name/sample count mismatch");
  if (names.size() < 2) throw std::invalid_argument("sequential_ks: need >=2 methods");
  const std::size_t k = names.size();
  KsTable table;
  table.names = names;
  table.equal.assign(k, std::vector<KsCell>(k));
  table.greater.assign(k, std::vector<KsCell>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      KsCell& eq = table.equal[i][j];
      eq.run = true;
      eq.result = ks_equal(samples[i], samples[j], alpha);
      if (eq.result.h == 1) {  // distributions differ: ask in both directions
        table.greater[i][j].run = true;
        table.greater[i][j].result = ks_greater(samples[i], samples[j], alpha);
        table.greater[j][i].run = true;
        table.greater[j][i].result = ks_greater(samples[j], samples[i], alpha);
      }
    }
  return table;
}

std::string ks_cell_text(const KsCell& cell) {
  if (!cell.run) return "-";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%d/%.3g", cell.result.h, cell.result.p_value);
  return buf;
}

}  // namespace smaa
