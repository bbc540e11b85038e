#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lietaylor/riemann.hpp"

using namespace lietaylor;

namespace {

RVec coords(std::initializer_list<double> v) {
  RVec x(int(v.size()));
  int i = 0;
  for (double e : v) x(i++) = e;
  return x;
}

}  // namespace

TEST_CASE("metric validation enforces symmetric positive definite grams") {
  const GroupModel& sl2r = registry_get("SL2R");
  RMat skew(3, 3);
  skew << 1, 0.2, 0, 0, 1, 0, 0, 0, 1;
  CHECK_THROWS_AS(make_metric(sl2r, skew), config_error);
  RMat indef = RMat::Identity(3, 3);
  indef(2, 2) = -1;
  CHECK_THROWS_AS(make_metric(sl2r, indef), config_error);
  MetricModel m = make_metric(sl2r);
  CHECK(m.lambda_min == Catch::Approx(1.0));
  CHECK(gnorm(m, coords({3, 0, 4})) == Catch::Approx(5.0));
}

TEST_CASE("constant paths have zero length") {
  const GroupModel& u1 = registry_get("U1");
  MetricModel m = make_metric(u1);
  GroupPath p = path_from_segments(u1, std::vector<RVec>{RVec::Zero(1)});
  CHECK(curve_length(u1, m, p) == 0.0);
}

TEST_CASE("unit speed circle paths have their coordinate length") {
  const GroupModel& u1 = registry_get("U1");
  MetricModel m = make_metric(u1);
  GroupPath full = path_from_segments(u1, std::vector<RVec>{coords({1.0})});
  CHECK(curve_length(u1, m, full) == Catch::Approx(1.0).margin(1e-6));
  GroupPath part = path_from_segments(u1, std::vector<RVec>{coords({0.7})});
  CHECK(curve_length(u1, m, part) == Catch::Approx(0.7).margin(1e-6));
}

TEST_CASE("piecewise length adds and is left invariant") {
  const GroupModel& sl2r = registry_get("SL2R");
  MetricModel m = make_metric(sl2r);
  std::vector<RVec> legs = {coords({0.2, 0, 0}), coords({0, 0.3, 0})};
  GroupPath p = path_from_segments(sl2r, legs);
  double len = curve_length(sl2r, m, p);
  CHECK(len == Catch::Approx(0.5).margin(1e-4));

  CMat g = exp_group(sl2r, coords({0.4, -0.1, 0.2}));
  GroupPath moved = path_from_segments(sl2r, legs, 64, &g);
  CHECK(curve_length(sl2r, m, moved) == Catch::Approx(len).margin(1e-10));
}

TEST_CASE("scaled grams scale lengths") {
  const GroupModel& sl2r = registry_get("SL2R");
  RMat gram = 4.0 * RMat::Identity(3, 3);
  MetricModel m2 = make_metric(sl2r, gram);
  GroupPath p = path_from_segments(sl2r, std::vector<RVec>{coords({0.3, 0.1, 0})});
  MetricModel m1 = make_metric(sl2r);
  CHECK(curve_length(sl2r, m2, p) == Catch::Approx(2 * curve_length(sl2r, m1, p)).margin(1e-12));
}

TEST_CASE("path validation rejects malformed time grids") {
  GroupPath p;
  p.group = "U1";
  CHECK_THROWS_AS(validate_path(p), config_error);
  const GroupModel& u1 = registry_get("U1");
  p.times = {0.0, 0.5, 0.5, 1.0};
  p.samples.assign(4, u1.identity());
  CHECK_THROWS_AS(validate_path(p), config_error);
  p.times = {0.0, 0.5, 1.0};
  p.samples.assign(3, u1.identity());
  CHECK_NOTHROW(validate_path(p));
  CHECK_THROWS_AS(path_from_segments(u1, std::vector<RVec>{}), config_error);
  CHECK_THROWS_AS(path_from_segments(u1, std::vector<RVec>{coords({0.1})}, 65), config_error);
}

TEST_CASE("distance bound is zero at coincident points") {
  const GroupModel& sl2r = registry_get("SL2R");
  MetricModel m = make_metric(sl2r);
  CMat g = exp_group(sl2r, coords({0.3, 0.2, -0.1}));
  DistanceBound b = distance_upper_bound(sl2r, m, g, g);
  CHECK_FALSE(b.unbounded);
  CHECK(b.value == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("distance bound reads off one-parameter displacements") {
  const GroupModel& u1 = registry_get("U1");
  MetricModel m = make_metric(u1);
  DistanceBound b = distance_upper_bound(u1, m, u1.identity(), exp_group(u1, coords({0.1})));
  CHECK_FALSE(b.unbounded);
  CHECK(b.value == Catch::Approx(0.1).margin(1e-12));
  CHECK(b.segments == 1);
}

TEST_CASE("distance bound dominates the triangle through a waypoint") {
  const GroupModel& sl2r = registry_get("SL2R");
  MetricModel m = make_metric(sl2r);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 10; ++trial) {
    RVec a(3), b(3);
    for (int i = 0; i < 3; ++i) {
      a(i) = u(rng);
      b(i) = u(rng);
    }
    CMat ga = exp_group(sl2r, a), gb = ga * exp_group(sl2r, b);
    DistanceBound direct = distance_upper_bound(sl2r, m, sl2r.identity(), gb);
    REQUIRE_FALSE(direct.unbounded);
    // two-leg curve through ga is an upper bound candidate as well
    double through = gnorm(m, a) + gnorm(m, b);
    CHECK(direct.value <= through + 1e-9);
  }
}

TEST_CASE("square-root splitting reaches outside the principal chart") {
  const GroupModel& u1 = registry_get("U1");
  MetricModel m = make_metric(u1);
  CMat neg(1, 1);
  neg(0, 0) = cd(-1, 0);
  CHECK_THROWS_AS(log_group(u1, neg), std::domain_error);
  DistanceBound b = distance_upper_bound(u1, m, u1.identity(), neg);
  CHECK_FALSE(b.unbounded);
  CHECK(b.segments == 2);
  // sqrt(-1) = i sits at coordinate 1/4, so the two-leg curve has length 1/2
  CHECK(b.value == Catch::Approx(0.5).margin(1e-12));

  // the SU2 antipode has no real square root inside the group: no candidate
  const GroupModel& su2 = registry_get("SU2");
  MetricModel msu = make_metric(su2);
  CMat anti = -su2.identity();
  REQUIRE(su2.member(anti));
  DistanceBound none = distance_upper_bound(su2, msu, su2.identity(), anti);
  CHECK(none.unbounded);
}

TEST_CASE("ball membership is one-sided") {
  const GroupModel& sl2r = registry_get("SL2R");
  MetricModel m = make_metric(sl2r);
  CMat center = exp_group(sl2r, coords({0.1, 0, 0}));
  CMat inside = center * exp_group(sl2r, coords({0.05, 0, 0}));
  BallVerdict v = ball_membership_upper(sl2r, m, inside, center, 0.2);
  CHECK(v.verdict == "inside");
  CHECK(v.bound == Catch::Approx(0.05).margin(1e-12));

  BallVerdict tight = ball_membership_upper(sl2r, m, inside, center, 0.01);
  CHECK(tight.verdict == "unknown");
}
