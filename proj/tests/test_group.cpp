#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lietaylor/group.hpp"

using namespace lietaylor;

namespace {

RVec coords(std::initializer_list<double> v) {
  RVec x(int(v.size()));
  int i = 0;
  for (double e : v) x(i++) = e;
  return x;
}

}  // namespace

TEST_CASE("registry lists the expected groups") {
  std::vector<std::string> names = registry_names();
  for (const char* want : {"U1", "Ctimes", "R1", "R4", "C1", "C4", "SL2R", "SL2C", "SU2"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
  CHECK_THROWS_AS(registry_get("SO3"), config_error);
}

TEST_CASE("circle exponential hits the quarter turn") {
  const GroupModel& u1 = registry_get("U1");
  CMat g = exp_group(u1, coords({0.25}));
  // e^{2 pi i / 4} = i
  CHECK(std::abs(g(0, 0) - cd(0, 1)) < 1e-14);
  CHECK(u1.member(g));

  RVec back = log_group(u1, g);
  CHECK(back(0) == Catch::Approx(0.25).margin(1e-13));
}

TEST_CASE("log of -1 on the circle is out of chart") {
  const GroupModel& u1 = registry_get("U1");
  CMat neg(1, 1);
  neg(0, 0) = cd(-1, 0);
  REQUIRE(u1.member(neg));
  CHECK_THROWS_AS(log_group(u1, neg), std::domain_error);
}

TEST_CASE("exponential chart round-trips on every group") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (const std::string& name : registry_names()) {
    const GroupModel& g = registry_get(name);
    for (int rep = 0; rep < 5; ++rep) {
      RVec x(g.d);
      for (int i = 0; i < g.d; ++i) x(i) = u(rng);
      CMat e = exp_group(g, x);
      INFO(name);
      CHECK(g.member(e));
      RVec back = log_group(g, e);
      CHECK((back - x).norm() < 1e-10);
    }
  }
}

TEST_CASE("exp on non-finite coordinates is rejected") {
  const GroupModel& g = registry_get("SL2R");
  RVec x = RVec::Zero(3);
  x(1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(exp_group(g, x), std::invalid_argument);
}

TEST_CASE("algebra coordinates invert algebra_element") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const std::string& name : registry_names()) {
    const GroupModel& g = registry_get(name);
    RVec x(g.d);
    for (int i = 0; i < g.d; ++i) x(i) = u(rng);
    RVec back = g.coordinates_of(g.algebra_element(x));
    INFO(name);
    CHECK((back - x).norm() < 1e-12);
  }
}

TEST_CASE("brackets stay inside each algebra") {
  for (const std::string& name : registry_names()) {
    const GroupModel& g = registry_get(name);
    for (int i = 0; i < g.d; ++i) {
      for (int j = 0; j < g.d; ++j) {
        CMat ei = g.algebra_element(RVec::Unit(g.d, i));
        CMat ej = g.algebra_element(RVec::Unit(g.d, j));
        CMat br = ei * ej - ej * ei;
        RVec c = g.coordinates_of(br);
        INFO(name << " [" << i << "," << j << "]");
        CHECK((g.algebra_element(c) - br).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("membership rejects perturbed elements with a reason") {
  const GroupModel& su2 = registry_get("SU2");
  CMat g = exp_group(su2, coords({0.2, -0.1, 0.3}));
  CMat bad = g;
  bad(0, 0) += cd(0.01, 0);
  std::string why;
  CHECK_FALSE(su2.member(bad, &why));
  CHECK_FALSE(why.empty());

  const GroupModel& sl2r = registry_get("SL2R");
  CMat c = exp_group(registry_get("SL2C"), coords({0, 0, 0, 0.2, 0, 0}));
  CHECK_FALSE(sl2r.member(c));  // complex entries fail the real form
}

TEST_CASE("complexification pairs embed source into partner") {
  for (const char* name : {"U1", "R1", "R3", "SL2R", "SU2"}) {
    const GroupModel& src = registry_get(name);
    GroupMorphism mor = complexification_morphism(src);
    const GroupModel& tgt = registry_get(mor.target);
    CMat g = exp_group(src, RVec(RVec::Constant(src.d, 0.11)));
    CMat h = mor.element_map(g);
    INFO(name << " -> " << mor.target);
    CHECK(tgt.member(h));
    // tangent map matches the differential of the embedding
    RVec x = RVec::Constant(src.d, 0.07);
    CMat lhs = mor.element_map(exp_group(src, x));
    CMat rhs = exp_group(tgt, RVec(mor.tangent_map * x));
    CHECK((lhs - rhs).norm() < 1e-9);
  }
  CHECK(complexification_morphism(registry_get("SU2")).target == "SL2C");
  CHECK_THROWS_AS(complexification_morphism(registry_get("Ctimes")), config_error);
}

TEST_CASE("circle covering wraps the line around U1") {
  GroupMorphism p = circle_covering();
  const GroupModel& r1 = registry_get("R1");
  CMat g = p.element_map(exp_group(r1, coords({0.25})));
  CHECK(std::abs(g(0, 0) - cd(0, 1)) < 1e-14);
  // deck shift by 1 lands on the same point
  CMat g2 = p.element_map(exp_group(r1, coords({1.25})));
  CHECK(std::abs(g2(0, 0) - g(0, 0)) < 1e-12);
}

TEST_CASE("complexified coordinates invert pair_complex_coordinates") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (const char* name : {"U1", "R2", "SL2R", "SU2"}) {
    const GroupModel& src = registry_get(name);
    CVecX zeta(src.d);
    for (int b = 0; b < src.d; ++b) zeta(b) = cd(u(rng), u(rng));
    RVec y = complexified_coordinates(src, zeta);
    CVecX back = pair_complex_coordinates(src, y);
    INFO(name);
    CHECK((back - zeta).norm() < 1e-10);
  }
}

TEST_CASE("multiplication by i squares to minus one on complex algebras") {
  for (const char* name : {"Ctimes", "C2", "SL2C"}) {
    const GroupModel& g = registry_get(name);
    RMat j = mult_i_matrix(g);
    CHECK((j * j + RMat::Identity(g.d, g.d)).norm() < 1e-14);
    // J realizes i * xi on matrices
    RVec x = RVec::Unit(g.d, 0);
    CMat lhs = g.algebra_element(RVec(j * x));
    CMat rhs = cd(0, 1) * g.algebra_element(x);
    INFO(name);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
  CHECK_THROWS_AS(mult_i_matrix(registry_get("SL2R")), config_error);
}
