#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "smaa/dm.hpp"
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

OmegaSample random_omega(Index n_points, Index dim, RngStream& rng) {
  Matrix rows(n_points, dim);
  for (Index t = 0; t < n_points; ++t) rows.row(t) = rng.simplex_point(dim).transpose();
  return OmegaSample(rows);
}

// Points on the simplex at controlled distances from the centroid: walk along
// (1,-1,0,...)/sqrt(2), so a step of t has distance exactly t*sqrt(2).
Vector centroid(Index n) { return Vector::Constant(n, 1.0 / static_cast<double>(n)); }

Vector centroid_offset(Index n, double step) {
  Vector w = centroid(n);
  w(0) += step;
  w(1) -= step;
  return w;
}

}  // namespace

TEST_CASE("roc masses: two positive weights from a three-point sample") {
  // lambda = 2: closest gets (1/2)(1/1 + 1/2) = 0.75, next (1/2)(1/2) = 0.25.
  Matrix rows(3, 3);
  rows.row(0) = centroid_offset(3, 0.20).transpose();  // farthest
  rows.row(1) = centroid_offset(3, 0.05).transpose();  // closest
  rows.row(2) = centroid_offset(3, 0.10).transpose();
  OmegaSample omega(rows);
  DmDistributionSpec spec{DmKind::Roc, 2.0, centroid(3)};
  MassDistribution p = dm_masses(spec, omega);
  CHECK(p[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(p[2] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p[0] == 0.0);
}

TEST_CASE("roc masses with lambda = |sample| are the full rank-order-centroid weights") {
  RngStream rng(11);
  const Index n_points = 12;
  OmegaSample omega = random_omega(n_points, 4, rng);
  Vector ref = rng.simplex_point(4);
  DmDistributionSpec spec{DmKind::Roc, static_cast<double>(n_points), ref};
  MassDistribution p = dm_masses(spec, omega);

  // independent oracle: sort indices by distance, compute (1/N) sum_{j=h}^N 1/j
  Vector dist = distance_profile(omega, ref);
  std::vector<Index> order(n_points);
  for (Index t = 0; t < n_points; ++t) order[static_cast<std::size_t>(t)] = t;
  std::sort(order.begin(), order.end(), [&](Index x, Index y) { return dist(x) < dist(y); });
  for (Index h = 0; h < n_points; ++h) {
    double expect = 0.0;
    for (Index j = h + 1; j <= n_points; ++j) expect += 1.0 / static_cast<double>(j);
    expect /= static_cast<double>(n_points);
    CHECK(p[order[static_cast<std::size_t>(h)]] == doctest::Approx(expect).epsilon(1e-13));
    CHECK(p[order[static_cast<std::size_t>(h)]] > 0.0);
  }
  CHECK(p.masses().sum() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("normal masses: equal distances split evenly") {
  Matrix rows(2, 3);
  rows.row(0) = vec({0.5, 0.3, 0.2}).transpose();
  rows.row(1) = vec({0.2, 0.3, 0.5}).transpose();  // mirror image: same distance
  OmegaSample omega(rows);
  DmDistributionSpec spec{DmKind::Normal, 0.1, centroid(3)};
  MassDistribution p = dm_masses(spec, omega);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("normal masses match the gaussian kernel evaluated by hand") {
  Matrix rows(3, 4);
  rows.row(0) = centroid_offset(4, 0.02).transpose();
  rows.row(1) = centroid_offset(4, 0.07).transpose();
  rows.row(2) = centroid_offset(4, 0.13).transpose();
  OmegaSample omega(rows);
  const double lambda = 0.09;
  DmDistributionSpec spec{DmKind::Normal, lambda, centroid(4)};
  MassDistribution p = dm_masses(spec, omega);
  double raw[3], total = 0.0;
  const double steps[3] = {0.02, 0.07, 0.13};
  for (int t = 0; t < 3; ++t) {
    const double d = steps[t] * std::sqrt(2.0);
    raw[t] = std::exp(-d * d / (2.0 * lambda * lambda));
    total += raw[t];
  }
  for (Index t = 0; t < 3; ++t)
    CHECK(p[t] == doctest::Approx(raw[t] / total).epsilon(1e-13));
}

TEST_CASE("exponential masses match the kernel evaluated by hand") {
  Matrix rows(2, 3);
  rows.row(0) = centroid_offset(3, 0.04).transpose();
  rows.row(1) = centroid_offset(3, 0.11).transpose();
  OmegaSample omega(rows);
  const double lambda = 9.0;
  DmDistributionSpec spec{DmKind::Exponential, lambda, centroid(3)};
  MassDistribution p = dm_masses(spec, omega);
  const double r0 = std::exp(-lambda * 0.04 * std::sqrt(2.0));
  const double r1 = std::exp(-lambda * 0.11 * std::sqrt(2.0));
  CHECK(p[0] == doctest::Approx(r0 / (r0 + r1)).epsilon(1e-13));
  CHECK(p[1] == doctest::Approx(r1 / (r0 + r1)).epsilon(1e-13));
}

TEST_CASE("inverse-distance masses: distance ratio 1:3 gives 3/4 and 1/4") {
  Matrix rows(2, 3);
  rows.row(0) = centroid_offset(3, 0.05).transpose();
  rows.row(1) = centroid_offset(3, 0.15).transpose();
  OmegaSample omega(rows);
  DmDistributionSpec spec{DmKind::InverseDistance, 1.0, centroid(3)};
  MassDistribution p = dm_masses(spec, omega);
  CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("inverse-distance handles an exact hit without blowing up") {
  Matrix rows(3, 3);
  rows.row(0) = centroid(3).transpose();  // d = 0
  rows.row(1) = centroid_offset(3, 0.05).transpose();
  rows.row(2) = centroid_offset(3, 0.10).transpose();
  OmegaSample omega(rows);
  DmDistributionSpec spec{DmKind::InverseDistance, 3.0, centroid(3)};
  MassDistribution p = dm_masses(spec, omega);
  CHECK(std::isfinite(p[0]));
  // the clamped zero distance dominates everything else by orders of magnitude
  CHECK(p[0] > 0.999);
  CHECK(p.masses().sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("delta masses: all mass on the appended reference") {
  RngStream rng(29);
  OmegaSample omega = random_omega(20, 3, rng);
  Vector ref = rng.simplex_point(3);
  omega.append(ref);
  DmDistributionSpec spec{DmKind::Delta, 0.0, ref};
  MassDistribution p = dm_masses(spec, omega);
  CHECK(p[omega.size() - 1] == 1.0);
  CHECK(p.masses().sum() == 1.0);
}

TEST_CASE("delta masses demand the reference to be a sample member") {
  RngStream rng(31);
  OmegaSample omega = random_omega(10, 3, rng);
  DmDistributionSpec spec{DmKind::Delta, 0.0, vec({0.7, 0.2, 0.1})};
  CHECK_THROWS_AS(dm_masses(spec, omega), std::invalid_argument);
}

TEST_CASE("structurally invalid lambda is rejected") {
  RngStream rng(37);
  OmegaSample omega = random_omega(5, 3, rng);
  Vector ref = centroid(3);
  CHECK_THROWS_AS(dm_masses({DmKind::Normal, 0.0, ref}, omega), std::invalid_argument);
  CHECK_THROWS_AS(dm_masses({DmKind::Normal, -0.1, ref}, omega), std::invalid_argument);
  CHECK_THROWS_AS(dm_masses({DmKind::Exponential, 8.5, ref}, omega), std::invalid_argument);
  CHECK_THROWS_AS(dm_masses({DmKind::Exponential, 0.0, ref}, omega), std::invalid_argument);
  CHECK_THROWS_AS(dm_masses({DmKind::InverseDistance, 0.0, ref}, omega), std::invalid_argument);
  CHECK_THROWS_AS(dm_masses({DmKind::Roc, 6.0, ref}, omega), std::invalid_argument);  // > |sample|
  CHECK_THROWS_AS(dm_masses({DmKind::Roc, 2.5, ref}, omega), std::invalid_argument);
  CHECK_THROWS_AS(dm_masses({DmKind::Roc, 0.0, ref}, omega), std::invalid_argument);
}

TEST_CASE("experiment sampling ranges for lambda") {
  CHECK(dm_lambda_in_range(DmKind::Normal, 0.15, 500));
  CHECK_FALSE(dm_lambda_in_range(DmKind::Normal, 0.3, 500));
  CHECK(dm_lambda_in_range(DmKind::Exponential, 9.0, 500));
  CHECK_FALSE(dm_lambda_in_range(DmKind::Exponential, 9.5, 500));
  CHECK_FALSE(dm_lambda_in_range(DmKind::Exponential, 7.0, 500));
  CHECK(dm_lambda_in_range(DmKind::InverseDistance, 2.5, 500));
  CHECK_FALSE(dm_lambda_in_range(DmKind::InverseDistance, 8.0, 500));
  CHECK(dm_lambda_in_range(DmKind::Roc, 50.0, 100));
  CHECK_FALSE(dm_lambda_in_range(DmKind::Roc, 50.0, 40));  // exceeds sample size
  CHECK_FALSE(dm_lambda_in_range(DmKind::Roc, 9.0, 100));
  CHECK(dm_lambda_in_range(DmKind::Delta, 0.0, 100));
}

TEST_CASE("all kinds produce masses that sum to one and decay with distance") {
  RngStream rng(41);
  for (int round = 0; round < 20; ++round) {
    RngStream local = rng.substream(static_cast<std::uint64_t>(round));
    OmegaSample omega = random_omega(40, 4, local);
    Vector ref = local.simplex_point(4);
    const DmDistributionSpec specs[] = {
        {DmKind::Normal, 0.12, ref},
        {DmKind::Exponential, 11.0, ref},
        {DmKind::InverseDistance, 4.0, ref},
        {DmKind::Roc, 10.0, ref},
    };
    Vector dist = distance_profile(omega, ref);
    for (const auto& spec : specs) {
      MassDistribution p = dm_masses(spec, omega);
      CHECK(p.masses().sum() == doctest::Approx(1.0).epsilon(1e-12));
      // monotone: strictly closer never gets less mass
      for (Index s = 0; s < omega.size(); ++s)
        for (Index t = 0; t < omega.size(); ++t)
          if (dist(s) < dist(t) - tol::distance_tie)
            CHECK(p[s] >= p[t] - 1e-12);
    }
  }
}

TEST_CASE("delta relation follows the reference's own ranking") {
  Matrix g(2, 2);
  g << 0.9, 0.1, 0.2, 0.7;
  PerformanceMatrix perf(g);
  Matrix rows(3, 2);
  rows << 0.5, 0.5, 0.1, 0.9, 0.8, 0.2;
  OmegaSample omega(rows);
  Vector ref = vec({0.8, 0.2});  // U(a1) = 0.74 > U(a2) = 0.30
  omega.append(ref);
  MassDistribution p = dm_masses({DmKind::Delta, 0.0, ref}, omega);
  CHECK(dm_relation(p, omega, perf, {0, 1}) == PairwiseVerdict::APreferred);
  CHECK(dm_relation(p, omega, perf, {1, 0}) == PairwiseVerdict::BPreferred);
}

TEST_CASE("perfectly symmetric two-point uniform DM is indifferent") {
  Matrix g(2, 2);
  g << 0.9, 0.1, 0.1, 0.9;
  PerformanceMatrix perf(g);
  Matrix rows(2, 2);
  rows << 0.3, 0.7, 0.7, 0.3;
  OmegaSample omega(rows);
  MassDistribution uniform(vec({0.5, 0.5}));
  CHECK(dm_relation(uniform, omega, perf, {0, 1}) == PairwiseVerdict::Indifferent);
}

TEST_CASE("relation agrees with the pairwise-winning index sign on random instances") {
  RngStream rng(43);
  for (int round = 0; round < 25; ++round) {
    RngStream local = rng.substream(static_cast<std::uint64_t>(round));
    PerformanceMatrix perf = random_nondominated_matrix(6, 3, local);
    OmegaSample omega = random_omega(50, 3, local);
    Vector ref = local.simplex_point(3);
    MassDistribution p = dm_masses({DmKind::Exponential, 10.0, ref}, omega);
    Matrix pw = pwi(perf, omega, p);
    for (Index a = 0; a < perf.alternatives(); ++a)
      for (Index b = a + 1; b < perf.alternatives(); ++b) {
        const double gap = pw(a, b) - pw(b, a);
        const PairwiseVerdict v = dm_relation(p, omega, perf, {a, b});
        if (v == PairwiseVerdict::APreferred)
          CHECK(gap > 0.0);
        else if (v == PairwiseVerdict::BPreferred)
          CHECK(gap < 0.0);
        else
          CHECK(std::abs(gap) <= 2.0 * tol::utility_tie);
      }
  }
}

TEST_CASE("elicitation with two alternatives asks about the only pair") {
  Matrix g(2, 2);
  g << 0.9, 0.1, 0.2, 0.7;
  PerformanceMatrix perf(g);
  Matrix rows(2, 2);
  rows << 0.5, 0.5, 0.9, 0.1;
  OmegaSample omega(rows);
  MassDistribution dm(vec({1.0, 0.0}));
  Elicitation e = elicit_pairs(perf, omega, dm, 1);
  REQUIRE(e.pairs.size() == 1);
  CHECK(e.pairs[0] == Pair{0, 1});
  REQUIRE(e.statements.size() == 1);
  // under w = (0.5, 0.5): U(a1) = 0.5 > U(a2) = 0.45, and the DM mass sits there
  CHECK(e.statements[0].a == 0);
  CHECK(e.statements[0].b == 1);
  CHECK_FALSE(e.statements[0].indifferent);
}

TEST_CASE("an exactly undecided pair is asked about first, lexicographic ties") {
  Matrix g(3, 2);
  g << 0.8, 0.2, 0.2, 0.8, 0.85, 0.04;
  PerformanceMatrix perf(g);
  Matrix rows(2, 2);
  rows << 0.3, 0.7, 0.7, 0.3;
  OmegaSample omega(rows);
  // uniform PWI: (a1,a2) flips across the two vectors -> 0.5 (criterion 0);
  // (a2,a3) also flips -> 0.5; (a1,a3) is won twice by a1 -> criterion 1.
  MassDistribution dm(vec({0.5, 0.5}));
  Elicitation e = elicit_pairs(perf, omega, dm, 2);
  REQUIRE(e.pairs.size() == 2);
  CHECK(e.pairs[0] == Pair{0, 1});  // lexicographically before (1,2)
  CHECK(e.pairs[1] == Pair{1, 2});
}

TEST_CASE("indifferent verdicts become two-sided statements") {
  Matrix g(2, 2);
  g << 0.9, 0.1, 0.1, 0.9;
  PerformanceMatrix perf(g);
  Matrix rows(2, 2);
  rows << 0.3, 0.7, 0.7, 0.3;
  OmegaSample omega(rows);
  MassDistribution dm(vec({0.5, 0.5}));
  Elicitation e = elicit_pairs(perf, omega, dm, 1);
  REQUIRE(e.statements.size() == 1);
  CHECK(e.statements[0].indifferent);
  PreferenceInfo info = e.to_preferences();
  CHECK(info.uncertain_indiff.size() == 1);
  CHECK(info.uncertain_strict.empty());
  CHECK_FALSE(info.has_certain());
}

TEST_CASE("selected pairs match an exhaustive sort oracle") {
  RngStream rng(47);
  for (int round = 0; round < 10; ++round) {
    RngStream local = rng.substream(static_cast<std::uint64_t>(round));
    PerformanceMatrix perf = random_nondominated_matrix(8, 4, local);
    OmegaSample omega = random_omega(60, 4, local);
    Vector ref = local.simplex_point(4);
    MassDistribution dm = dm_masses({DmKind::Normal, 0.1, ref}, omega);

    const Index z = 4;
    Elicitation e = elicit_pairs(perf, omega, dm, z);

    // oracle: enumerate all pairs, sort by (gap, lexicographic), take first z
    MassDistribution uniform(Vector::Constant(omega.size(), 1.0 / static_cast<double>(omega.size())));
    Matrix pw = pwi(perf, omega, uniform);
    std::vector<Pair> all;
    for (Index a = 0; a < 8; ++a)
      for (Index b = a + 1; b < 8; ++b) all.push_back({a, b});
    std::sort(all.begin(), all.end(), [&](const Pair& x, const Pair& y) {
      const double gx = std::abs(pw(x.first, x.second) - pw(x.second, x.first));
      const double gy = std::abs(pw(y.first, y.second) - pw(y.second, y.first));
      if (gx != gy) return gx < gy;
      return x < y;
    });
    REQUIRE(e.pairs.size() == static_cast<std::size_t>(z));
    for (Index i = 0; i < z; ++i) CHECK(e.pairs[static_cast<std::size_t>(i)] == all[static_cast<std::size_t>(i)]);

    // every statement is oriented by the DM relation
    for (std::size_t i = 0; i < e.statements.size(); ++i) {
      const ElicitedStatement& s = e.statements[i];
      const PairwiseVerdict v = dm_relation(dm, omega, perf, e.pairs[i]);
      if (v == PairwiseVerdict::Indifferent) {
        CHECK(s.indifferent);
      } else {
        const Index want_a = (v == PairwiseVerdict::APreferred) ? e.pairs[i].first : e.pairs[i].second;
        CHECK(s.a == want_a);
      }
    }
  }
}

TEST_CASE("z outside the pair count is rejected") {
  Matrix g(3, 2);
  g << 0.8, 0.2, 0.2, 0.8, 0.55, 0.5;
  PerformanceMatrix perf(g);
  Matrix rows(1, 2);
  rows << 0.5, 0.5;
  OmegaSample omega(rows);
  MassDistribution dm(vec({1.0}));
  CHECK_THROWS_AS(elicit_pairs(perf, omega, dm, 4), std::invalid_argument);
  CHECK_THROWS_AS(elicit_pairs(perf, omega, dm, -1), std::invalid_argument);
  CHECK_NOTHROW(elicit_pairs(perf, omega, dm, 3));
}

TEST_CASE("kind names round-trip") {
  for (DmKind k : {DmKind::Delta, DmKind::Normal, DmKind::Exponential, DmKind::InverseDistance,
                   DmKind::Roc})
    CHECK(dm_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(dm_kind_from_string("cauchy"), std::invalid_argument);
}
