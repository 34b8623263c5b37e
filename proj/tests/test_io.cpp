#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "smaa/core.hpp"
#include "smaa/indices.hpp"
#include "smaa/io.hpp"
#include "smaa/rng.hpp"
#include "smaa/stats.hpp"

using namespace smaa;

namespace {

PerformanceMatrix small_instance() {
  Matrix values(3, 2);
  values << 0.9, 0.1,  //
      0.1, 0.9,        //
      0.6, 0.5;
  return PerformanceMatrix(values, {"north", "south", "mix"});
}

OmegaSample random_omega(Index n_points, Index dim, RngStream& rng) {
  Matrix rows(n_points, dim);
  for (Index t = 0; t < n_points; ++t) rows.row(t) = rng.simplex_point(dim).transpose();
  return OmegaSample(rows);
}

}  // namespace

TEST_CASE("format_double round-trips awkward values") {
  const std::vector<double> values = {0.0,
                                      1.0,
                                      -1.0,
                                      1.0 / 3.0,
                                      0.1,
                                      1e-300,
                                      1.7976931348623157e308,
                                      5e-324,
                                      2.2250738585072014e-308,
                                      0.30000000000000004};
  for (double v : values) {
    const double back = parse_double(format_double(v), "test");
    CHECK(back == v);
  }
}

TEST_CASE("parse_double rejects junk") {
  CHECK_THROWS_AS(parse_double("", "t"), std::runtime_error);
  CHECK_THROWS_AS(parse_double("abc", "t"), std::runtime_error);
  CHECK_THROWS_AS(parse_double("1.5x", "t"), std::runtime_error);
  CHECK_THROWS_AS(parse_double("1.5 ", "t"), std::runtime_error);
  CHECK(parse_double("-2.5e-3", "t") == -2.5e-3);
}

TEST_CASE("performance csv round-trips bitwise") {
  RngStream rng(77);
  const PerformanceMatrix perf = random_nondominated_matrix(6, 4, rng);
  std::ostringstream out;
  write_performance_csv(out, perf);
  std::istringstream in(out.str());
  const PerformanceMatrix back = read_performance_csv(in);
  REQUIRE(back.alternatives() == perf.alternatives());
  REQUIRE(back.criteria() == perf.criteria());
  for (Index a = 0; a < perf.alternatives(); ++a) {
    CHECK(back.label(a) == perf.label(a));
    for (Index c = 0; c < perf.criteria(); ++c) CHECK(back.values()(a, c) == perf.values()(a, c));
  }
}

TEST_CASE("performance csv keeps custom labels") {
  const PerformanceMatrix perf = small_instance();
  std::ostringstream out;
  write_performance_csv(out, perf);
  std::istringstream in(out.str());
  const PerformanceMatrix back = read_performance_csv(in);
  CHECK(back.label(0) == "north");
  CHECK(back.label(1) == "south");
  CHECK(back.label(2) == "mix");
}

TEST_CASE("performance csv rejects malformed input") {
  SUBCASE("bad header") {
    std::istringstream in("id,g1\nx,0.5\n");
    CHECK_THROWS_AS(read_performance_csv(in), std::runtime_error);
  }
  SUBCASE("ragged row") {
    std::istringstream in("alt,g1,g2\na1,0.5\n");
    CHECK_THROWS_AS(read_performance_csv(in), std::runtime_error);
  }
  SUBCASE("non-numeric cell") {
    std::istringstream in("alt,g1,g2\na1,0.5,oops\n");
    CHECK_THROWS_AS(read_performance_csv(in), std::runtime_error);
  }
  SUBCASE("no rows") {
    std::istringstream in("alt,g1,g2\n");
    CHECK_THROWS_AS(read_performance_csv(in), std::runtime_error);
  }
  SUBCASE("dominated row is caught by the matrix itself") {
    std::istringstream in("alt,g1,g2\na1,0.9,0.9\na2,0.1,0.1\n");
    CHECK_THROWS_AS(read_performance_csv(in), std::invalid_argument);
  }
}

TEST_CASE("weight csv round-trips bitwise") {
  RngStream rng(5);
  const OmegaSample omega = random_omega(40, 3, rng);
  std::ostringstream out;
  write_omega_csv(out, omega);
  std::istringstream in(out.str());
  const OmegaSample back = read_omega_csv(in);
  REQUIRE(back.size() == omega.size());
  REQUIRE(back.dimension() == omega.dimension());
  for (Index t = 0; t < omega.size(); ++t)
    for (Index c = 0; c < omega.dimension(); ++c) CHECK(back.rows()(t, c) == omega.rows()(t, c));
}

TEST_CASE("weight csv rejects malformed input") {
  SUBCASE("bad header") {
    std::istringstream in("x1,x2\n0.5,0.5\n");
    CHECK_THROWS_AS(read_omega_csv(in), std::runtime_error);
  }
  SUBCASE("ragged row") {
    std::istringstream in("w1,w2\n0.5,0.25,0.25\n");
    CHECK_THROWS_AS(read_omega_csv(in), std::runtime_error);
  }
  SUBCASE("rows must stay on the simplex") {
    std::istringstream in("w1,w2\n0.7,0.7\n");
    CHECK_THROWS_AS(read_omega_csv(in), std::invalid_argument);
  }
}

TEST_CASE("mass csv round-trips bitwise") {
  Vector masses(4);
  masses << 0.1, 0.2, 1.0 / 3.0, 1.0 - 0.1 - 0.2 - 1.0 / 3.0;
  std::ostringstream out;
  write_masses_csv(out, masses);
  std::istringstream in(out.str());
  const Vector back = read_masses_csv(in);
  REQUIRE(back.size() == masses.size());
  for (Index t = 0; t < masses.size(); ++t) CHECK(back(t) == masses(t));
}

TEST_CASE("value column csv round-trips and checks its header") {
  const std::vector<double> values = {0.25, 1e-9, 3.5};
  std::ostringstream out;
  write_value_column_csv(out, "pwi_distance", values);
  std::istringstream in(out.str());
  const std::vector<double> back = read_value_column_csv(in, "pwi_distance");
  CHECK(back == values);
  std::istringstream wrong(out.str());
  CHECK_THROWS_AS(read_value_column_csv(wrong, "rai_distance"), std::runtime_error);
}

TEST_CASE("rank-acceptability csv matches a hand-written grid") {
  const PerformanceMatrix perf = small_instance();
  Matrix grid(3, 3);
  grid << 0.5, 0.25, 0.25,  //
      0.25, 0.5, 0.25,      //
      0.25, 0.25, 0.5;
  std::ostringstream out;
  write_rai_csv(out, perf, grid);
  CHECK(out.str() ==
        "rank,north,south,mix\n"
        "1,0.5,0.25,0.25\n"
        "2,0.25,0.5,0.25\n"
        "3,0.25,0.25,0.5\n");
  Matrix wrong(2, 2);
  wrong.setZero();
  std::ostringstream sink;
  CHECK_THROWS_AS(write_rai_csv(sink, perf, wrong), std::invalid_argument);
}

TEST_CASE("pairwise-winning csv matches a hand-written grid") {
  const PerformanceMatrix perf = small_instance();
  Matrix grid(3, 3);
  grid << 0.0, 0.75, 0.5,  //
      0.25, 0.0, 0.5,      //
      0.5, 0.5, 0.0;
  std::ostringstream out;
  write_pwi_csv(out, perf, grid);
  CHECK(out.str() ==
        "from/to,north,south,mix\n"
        "north,0,0.75,0.5\n"
        "south,0.25,0,0.5\n"
        "mix,0.5,0.5,0\n");
}

TEST_CASE("preference file round-trips all six statement kinds") {
  const PerformanceMatrix perf = small_instance();
  PreferenceInfo prefs;
  prefs.certain_strict = {{0, 1}};
  prefs.certain_indiff = {{1, 2}};
  prefs.certain_intensity = {Quad{0, 1, 1, 2}};
  prefs.uncertain_strict = {{2, 0}};
  prefs.uncertain_indiff = {{0, 2}};
  prefs.uncertain_intensity = {Quad{2, 1, 0, 1}};
  std::ostringstream out;
  write_preferences(out, perf, prefs);
  CHECK(out.str() ==
        "strict north south\n"
        "indiff south mix\n"
        "intensity north south south mix\n"
        "u_strict mix north\n"
        "u_indiff north mix\n"
        "u_intensity mix south north south\n");
  std::istringstream in(out.str());
  const PreferenceInfo back = read_preferences(in, perf);
  CHECK(back.certain_strict == prefs.certain_strict);
  CHECK(back.certain_indiff == prefs.certain_indiff);
  CHECK(back.uncertain_strict == prefs.uncertain_strict);
  CHECK(back.uncertain_indiff == prefs.uncertain_indiff);
  REQUIRE(back.certain_intensity.size() == 1);
  CHECK(back.certain_intensity[0].a == 0);
  CHECK(back.certain_intensity[0].b == 1);
  CHECK(back.certain_intensity[0].c == 1);
  CHECK(back.certain_intensity[0].d == 2);
  REQUIRE(back.uncertain_intensity.size() == 1);
  CHECK(back.uncertain_intensity[0].a == 2);
  CHECK(back.uncertain_intensity[0].d == 1);
}

TEST_CASE("preference file ignores comments and blank lines") {
  const PerformanceMatrix perf = small_instance();
  std::istringstream in(
      "# elicited in session 3\n"
      "\n"
      "strict north south  # strongest pair\n"
      "   \n"
      "u_indiff south mix\n");
  const PreferenceInfo prefs = read_preferences(in, perf);
  CHECK(prefs.certain_strict == std::vector<Pair>{{0, 1}});
  CHECK(prefs.uncertain_indiff == std::vector<Pair>{{1, 2}});
  CHECK(prefs.certain_indiff.empty());
}

TEST_CASE("preference file rejects malformed statements") {
  const PerformanceMatrix perf = small_instance();
  SUBCASE("unknown kind") {
    std::istringstream in("prefer north south\n");
    CHECK_THROWS_AS(read_preferences(in, perf), std::runtime_error);
  }
  SUBCASE("unknown label") {
    std::istringstream in("strict north east\n");
    CHECK_THROWS_AS(read_preferences(in, perf), std::runtime_error);
  }
  SUBCASE("wrong arity for a pair") {
    std::istringstream in("strict north south mix\n");
    CHECK_THROWS_AS(read_preferences(in, perf), std::runtime_error);
  }
  SUBCASE("wrong arity for an intensity") {
    std::istringstream in("intensity north south mix\n");
    CHECK_THROWS_AS(read_preferences(in, perf), std::runtime_error);
  }
  SUBCASE("self-comparison is caught by statement validation") {
    std::istringstream in("strict north north\n");
    CHECK_THROWS_AS(read_preferences(in, perf), std::invalid_argument);
  }
}

TEST_CASE("decision-table csv carries h/p cells and dashes") {
  KsTable table;
  table.names = {"alpha", "beta"};
  table.equal.assign(2, std::vector<KsCell>(2));
  table.greater.assign(2, std::vector<KsCell>(2));
  table.equal[0][1].run = true;
  table.equal[0][1].result = {0.5, 0.03125, 1};
  table.greater[0][1].run = true;
  table.greater[0][1].result = {0.5, 0.015625, 1};
  table.greater[1][0].run = true;
  table.greater[1][0].result = {0.0, 1.0, 0};

  std::ostringstream equal_out;
  write_ks_equal_csv(equal_out, table);
  CHECK(equal_out.str() ==
        "method,alpha,beta\n"
        "alpha,-," + ks_cell_text(table.equal[0][1]) + "\n"
        "beta,-,-\n");

  std::ostringstream greater_out;
  write_ks_greater_csv(greater_out, table);
  CHECK(greater_out.str() ==
        "method,alpha,beta\n"
        "alpha,-," + ks_cell_text(table.greater[0][1]) + "\n"
        "beta," + ks_cell_text(table.greater[1][0]) + ",-\n");
}

TEST_CASE("text files write and read back") {
  const std::string path = "io_test_scratch.txt";
  const std::string content = "line one\nline two\n";
  write_text_file(path, content);
  CHECK(read_text_file(path) == content);
  CHECK_THROWS_AS(read_text_file("definitely/not/here.txt"), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("crlf input is accepted everywhere") {
  std::istringstream perf_in("alt,g1,g2\r\nn,0.9,0.1\r\ns,0.1,0.9\r\n");
  const PerformanceMatrix perf = read_performance_csv(perf_in);
  CHECK(perf.values()(0, 0) == 0.9);
  std::istringstream pref_in("strict n s\r\n");
  const PreferenceInfo prefs = read_preferences(pref_in, perf);
  CHECK(prefs.certain_strict == std::vector<Pair>{{0, 1}});
}
