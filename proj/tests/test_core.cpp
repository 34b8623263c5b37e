#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "smaa/core.hpp"

using namespace smaa;

namespace {

Matrix mat3(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index r = 0;
  for (const auto& row : rows) {
    Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("weighted-sum utility of a hand instance") {
  // (0.3,0.6,0.9) . (0.2,0.3,0.5) = 0.06 + 0.18 + 0.45 = 0.69
  CHECK(evaluate(vec({0.3, 0.6, 0.9}), vec({0.2, 0.3, 0.5})) == doctest::Approx(0.69).epsilon(1e-15));
}

TEST_CASE("euclidean distance of a hand instance") {
  // sqrt(0.09 + 0 + 0.09) = sqrt(0.18)
  CHECK(distance(vec({0.2, 0.3, 0.5}), vec({0.5, 0.3, 0.2})) ==
        doctest::Approx(std::sqrt(0.18)).epsilon(1e-15));
}

TEST_CASE("utilities matrix agrees with elementwise evaluation") {
  PerformanceMatrix perf(mat3({{0.9, 0.1}, {0.2, 0.8}, {0.6, 0.55}}));
  Matrix omega_rows = mat3({{0.5, 0.5}, {0.9, 0.1}, {0.25, 0.75}});
  OmegaSample omega(omega_rows);
  Matrix u = utilities(perf, omega);
  REQUIRE(u.rows() == 3);
  REQUIRE(u.cols() == 3);
  for (Index a = 0; a < 3; ++a)
    for (Index t = 0; t < 3; ++t)
      CHECK(u(a, t) == doctest::Approx(evaluate(perf.row(a), omega.point(t))).epsilon(1e-15));
}

TEST_CASE("weight vector validation") {
  CHECK_NOTHROW(check_weight_vector(vec({0.25, 0.25, 0.5})));
  CHECK_THROWS_AS(check_weight_vector(vec({0.5, 0.6})), std::invalid_argument);
  CHECK_THROWS_AS(check_weight_vector(vec({-0.1, 1.1})), std::invalid_argument);
  // slack within tolerance passes
  Vector nearly = vec({0.5, 0.5});
  nearly[0] += 5e-10;
  CHECK_NOTHROW(check_weight_vector(nearly));
}

TEST_CASE("performance matrix rejects dominated and duplicate rows") {
  CHECK_THROWS_AS(PerformanceMatrix(mat3({{0.5, 0.5}, {0.6, 0.6}})), std::invalid_argument);
  CHECK_THROWS_AS(PerformanceMatrix(mat3({{0.5, 0.5}, {0.5, 0.5}})), std::invalid_argument);
  CHECK_THROWS_AS(PerformanceMatrix(mat3({{0.5, 0.5}, {0.5, 0.6}})), std::invalid_argument);
  CHECK_NOTHROW(PerformanceMatrix(mat3({{0.7, 0.2}, {0.3, 0.6}})));
  CHECK_THROWS_AS(PerformanceMatrix(mat3({{0.7, 1.2}, {0.3, 0.6}})), std::invalid_argument);
}

TEST_CASE("random nondominated matrices satisfy the invariant exhaustively") {
  RngStream rng(20240817);
  for (int trial = 0; trial < 50; ++trial) {
    PerformanceMatrix perf = random_nondominated_matrix(8, 4, rng);
    const Matrix& g = perf.values();
    CHECK((g.array() >= 0.0).all());
    CHECK((g.array() <= 1.0).all());
    for (Index a = 0; a < g.rows(); ++a)
      for (Index b = 0; b < g.rows(); ++b)
        if (a != b) CHECK_FALSE(dominated_or_equal(g.row(a).transpose(), g.row(b).transpose()));
  }
}

TEST_CASE("random nondominated matrix is reproducible from the seed") {
  RngStream r1(7), r2(7);
  Matrix a = random_nondominated_matrix(6, 3, r1).values();
  Matrix b = random_nondominated_matrix(6, 3, r2).values();
  CHECK(a == b);
}

TEST_CASE("barycenter and distance profile") {
  OmegaSample omega(mat3({{0.5, 0.5}, {0.9, 0.1}, {0.1, 0.9}}));
  Vector bar = barycenter(omega);
  CHECK(bar[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bar[1] == doctest::Approx(0.5).epsilon(1e-15));
  Vector d = distance_profile(omega, vec({0.5, 0.5}));
  CHECK(d[0] == doctest::Approx(0.0));
  CHECK(d[1] == doctest::Approx(std::sqrt(0.32)).epsilon(1e-12));
  CHECK(d[2] == doctest::Approx(std::sqrt(0.32)).epsilon(1e-12));
}

TEST_CASE("simplex points are uniform over the simplex (moment sanity)") {
  RngStream rng(99);
  Index n = 4;
  Vector mean = Vector::Zero(n);
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    Vector w = rng.simplex_point(n);
    CHECK_NOTHROW(check_weight_vector(w));
    mean += w;
  }
  mean /= draws;
  for (Index i = 0; i < n; ++i) CHECK(mean[i] == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("substreams with different tags decorrelate") {
  RngStream root(123);
  RngStream a = root.substream(1), b = root.substream(2);
  bool all_equal = true;
  for (int i = 0; i < 16; ++i) all_equal = all_equal && (a.uniform() == b.uniform());
  CHECK_FALSE(all_equal);
  // same tag twice gives the identical stream
  RngStream c = root.substream(1);
  RngStream d = root.substream(1);
  for (int i = 0; i < 16; ++i) CHECK(c.uniform() == d.uniform());
}
