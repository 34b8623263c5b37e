#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smaa/indices.hpp"
#include "smaa/rng.hpp"

using namespace smaa;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// independent brute-force oracle: sort utilities per sampled vector, accumulate
// masses directly
void brute_force(const PerformanceMatrix& perf, const OmegaSample& omega,
                 const MassDistribution& mass, Matrix* rai_out, Matrix* pwi_out) {
  const Index m = perf.alternatives();
  *rai_out = Matrix::Zero(m, m);
  *pwi_out = Matrix::Zero(m, m);
  for (Index t = 0; t < omega.size(); ++t) {
    Vector u = utilities(perf, omega.point(t));
    for (Index a = 0; a < m; ++a) {
      Index r = 0;
      for (Index x = 0; x < m; ++x) {
        if (x == a) continue;
        double gap = u[x] - u[a];
        if (gap > tol::utility_tie || (std::abs(gap) <= tol::utility_tie && x < a)) ++r;
      }
      (*rai_out)(r, a) += mass[t];
    }
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b) {
        if (a >= b) continue;
        double gap = u[a] - u[b];
        if (gap > tol::utility_tie)
          (*pwi_out)(a, b) += mass[t];
        else if (gap < -tol::utility_tie)
          (*pwi_out)(b, a) += mass[t];
        else {
          (*pwi_out)(a, b) += 0.5 * mass[t];
          (*pwi_out)(b, a) += 0.5 * mass[t];
        }
      }
  }
}

}  // namespace

TEST_CASE("rank of alternatives under a fixed weight vector") {
  Matrix g(3, 2);
  g << 0.9, 0.1, 0.1, 0.9, 0.6, 0.55;
  PerformanceMatrix perf(g);
  Vector w = vec({0.5, 0.5});
  // utilities: 0.5, 0.5, 0.575 -> a3 first; a1 and a2 tie, index breaks it
  CHECK(rank_of(2, w, perf) == 1);
  CHECK(rank_of(0, w, perf) == 2);
  CHECK(rank_of(1, w, perf) == 3);
}

TEST_CASE("indices against brute force on random instances") {
  RngStream rng(90210);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 3 + static_cast<Index>(rng.uniform_int(0, 2));
    const Index n = 2 + static_cast<Index>(rng.uniform_int(0, 1));
    PerformanceMatrix perf = random_nondominated_matrix(m, n, rng);
    const Index nsamp = 10 + static_cast<Index>(rng.uniform_int(0, 40));
    Matrix rows(nsamp, n);
    for (Index t = 0; t < nsamp; ++t) rows.row(t) = rng.simplex_point(n).transpose();
    OmegaSample omega(rows);
    Vector p(nsamp);
    for (Index t = 0; t < nsamp; ++t) p[t] = rng.uniform();
    p /= p.sum();
    MassDistribution mass(p);

    Matrix rai_oracle, pwi_oracle;
    brute_force(perf, omega, mass, &rai_oracle, &pwi_oracle);
    Matrix b = rai(perf, omega, mass);
    Matrix q = pwi(perf, omega, mass);
    CHECK((b - rai_oracle).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((q - pwi_oracle).cwiseAbs().maxCoeff() <= 1e-12);

    // row and column sums of the rank-acceptability matrix are exactly 1
    for (Index r = 0; r < m; ++r) CHECK(b.row(r).sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (Index a = 0; a < m; ++a) CHECK(b.col(a).sum() == doctest::Approx(1.0).epsilon(1e-12));
    // pairwise-winning entries are complementary
    for (Index a = 0; a < m; ++a)
      for (Index c = a + 1; c < m; ++c)
        CHECK(q(a, c) + q(c, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("point mass reproduces the deterministic ranking") {
  Matrix g(4, 3);
  g << 0.9, 0.2, 0.3, 0.1, 0.85, 0.2, 0.3, 0.3, 0.8, 0.55, 0.5, 0.45;
  PerformanceMatrix perf(g);
  Vector w = vec({0.2, 0.3, 0.5});
  Matrix rows(1, 3);
  rows.row(0) = w.transpose();
  OmegaSample omega(rows);
  MassDistribution mass(vec({1.0}));
  Matrix b = rai(perf, omega, mass);
  Matrix q = pwi(perf, omega, mass);
  // every alternative sits at exactly one rank with mass 1
  for (Index a = 0; a < 4; ++a) {
    CHECK(b.col(a).maxCoeff() == doctest::Approx(1.0));
    CHECK(b.col(a).sum() == doctest::Approx(1.0));
  }
  CHECK(is_total_order(q));
  // ranks agree with rank_of
  for (Index a = 0; a < 4; ++a) CHECK(b(rank_of(a, w, perf) - 1, a) == doctest::Approx(1.0));
}

TEST_CASE("exact utility ties split pairwise mass") {
  Matrix g(2, 2);
  g << 0.7, 0.3, 0.3, 0.7;
  PerformanceMatrix perf(g);
  Matrix rows(1, 2);
  rows << 0.5, 0.5;  // utilities tie exactly
  OmegaSample omega(rows);
  MassDistribution mass(vec({1.0}));
  Matrix q = pwi(perf, omega, mass);
  CHECK(q(0, 1) == doctest::Approx(0.5));
  CHECK(q(1, 0) == doctest::Approx(0.5));
  // rank tie falls to the lower index
  Matrix b = rai(perf, omega, mass);
  CHECK(b(0, 0) == doctest::Approx(1.0));
  CHECK(b(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("total order predicate") {
  Matrix good(3, 3);
  good << 0, 1, 1, 0, 0, 1, 0, 0, 0;
  CHECK(is_total_order(good));
  Matrix cycle(3, 3);
  cycle << 0, 1, 0, 0, 0, 1, 1, 0, 0;  // a>b>c>a
  CHECK_FALSE(is_total_order(cycle));
  Matrix fractional(2, 2);
  fractional << 0, 0.6, 0.4, 0;
  CHECK_FALSE(is_total_order(fractional));
}
