#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lietaylor/extend.hpp"

using namespace lietaylor;

namespace {

RVec coords(std::initializer_list<double> v) {
  RVec x(int(v.size()));
  int i = 0;
  for (double e : v) x(i++) = e;
  return x;
}

}  // namespace

TEST_CASE("cauchy-riemann residual vanishes on holomorphic fields") {
  const GroupModel& sl2c = registry_get("SL2C");
  Field entry = make_entry_field(sl2c);
  CHECK(cauchy_riemann_residual(entry, sl2c, sl2c.identity()) < 1e-10);
  CMat g = exp_group(sl2c, coords({0.2, 0.1, -0.3, 0.05, 0, 0.1}));
  CHECK(cauchy_riemann_residual(entry, sl2c, g) < 1e-10);
  CHECK(cauchy_riemann_residual(make_trace_field(sl2c), sl2c, g) < 1e-10);
  Field c = make_const_field(sl2c, cd(2, 1));
  CHECK(cauchy_riemann_residual(c, sl2c, g) == 0.0);
}

TEST_CASE("cauchy-riemann residual detects the real part") {
  const GroupModel& sl2c = registry_get("SL2C");
  Field re = make_re_entry_field(sl2c);
  // d/dt Re(exp(t iH)_11) = 0 while i * d/dt Re(exp(tH)_11) = i, so the first
  // holomorphic pair already contributes 1.
  double res = cauchy_riemann_residual(re, sl2c, sl2c.identity());
  CHECK(res == Catch::Approx(1.0).margin(1e-5));
  const GroupModel& sl2r = registry_get("SL2R");
  CHECK_THROWS_AS(
      cauchy_riemann_residual(make_entry_field(sl2r), sl2r, sl2r.identity()),
      config_error);
}

TEST_CASE("holomorphic shadow continues the circle character") {
  const GroupModel& u1 = registry_get("U1");
  Field f = make_char_field(u1, 1);
  ShadowValue sv = holomorphic_shadow(f, u1, coords({0, 0.1}));
  CHECK(std::abs(sv.z(0) - cd(0, 0.1)) < 1e-14);
  CHECK(sv.value.real() == Catch::Approx(std::exp(-0.2 * kPi)).epsilon(1e-12));
  CHECK(std::abs(sv.value.imag()) < 1e-12);
  CHECK(sv.tail < 1e-10);
  CHECK(!sv.radius_warning);
}

TEST_CASE("holomorphic shadow continues a matrix entry on SL2R") {
  const GroupModel& sl2r = registry_get("SL2R");
  Field f = make_entry_field(sl2r);
  ShadowValue sv = holomorphic_shadow(f, sl2r, coords({0, 0, 0, 0.2, 0, 0}));
  // the request is exp(0.2 i H), whose upper-left entry is e^{0.2 i}.
  cd want = std::exp(cd(0, 0.2));
  CHECK(std::abs(sv.value - want) < 1e-10);
  CHECK(sv.tail < 1e-4);
  CHECK(!sv.radius_warning);
}

TEST_CASE("holomorphic shadow at the origin is the field value") {
  const GroupModel& u1 = registry_get("U1");
  ShadowValue sv = holomorphic_shadow(make_char_field(u1, 1), u1, coords({0, 0}));
  CHECK(std::abs(sv.value - cd(1, 0)) < 1e-14);
  CHECK(sv.tail == 0.0);
  ShadowValue far = holomorphic_shadow(make_char_field(u1, 1), u1, coords({0, 0.9}));
  CHECK(far.radius_warning);
}

TEST_CASE("steiner chain over a constant path keeps the endpoints") {
  const GroupModel& u1 = registry_get("U1");
  MetricModel metric = make_metric(u1);
  GroupPath p = path_from_segments(u1, std::vector<RVec>{coords({0})}, 16);
  SteinerChain chain = steiner_chain(u1, metric, p, 0.25);
  REQUIRE(chain.times.size() == 2);
  CHECK(chain.times.front() == 0.0);
  CHECK(chain.times.back() == 1.0);
  CHECK(op_norm(CMat(chain.centers[0] - u1.identity())) < 1e-14);
  CHECK(op_norm(CMat(chain.centers[1] - u1.identity())) < 1e-14);
}

TEST_CASE("steiner chain subdivides the full circle into quarter arcs") {
  const GroupModel& u1 = registry_get("U1");
  MetricModel metric = make_metric(u1);
  GroupPath p = path_from_segments(u1, std::vector<RVec>{coords({1})}, 64);
  SteinerChain chain = steiner_chain(u1, metric, p, 0.25, 0.0);
  REQUIRE(chain.times.size() == 5);
  for (size_t k = 0; k < 5; ++k)
    CHECK(chain.times[k] == Catch::Approx(0.25 * double(k)).margin(1e-12));
  ChainCheck c = verify_chain(u1, metric, p, chain);
  CHECK(c.covered);
  CHECK(c.linked);
  CHECK(c.worst_cover <= 0.25 + 1e-9);
  CHECK(c.worst_link <= 0.25 + 1e-9);
}

TEST_CASE("steiner chain refuses undersampled paths and bad parameters") {
  const GroupModel& u1 = registry_get("U1");
  MetricModel metric = make_metric(u1);
  GroupPath coarse = path_from_segments(u1, std::vector<RVec>{coords({1})}, 4);
  CHECK_THROWS_WITH(steiner_chain(u1, metric, coarse, 0.1, 0.2),
                    Catch::Matchers::ContainsSubstring("resample"));
  GroupPath fine = path_from_segments(u1, std::vector<RVec>{coords({1})}, 64);
  CHECK_THROWS_AS(steiner_chain(u1, metric, fine, 0.0), config_error);
  CHECK_THROWS_AS(steiner_chain(u1, metric, fine, 0.25, 1.0), config_error);
}

TEST_CASE("continuation along a path recenters exactly for catalog fields") {
  const GroupModel& u1 = registry_get("U1");
  const GroupModel& ct = registry_get("Ctimes");
  Field f = make_char_field(u1, 1);
  GroupPath p = path_from_segments(ct, std::vector<RVec>{coords({0, 0.3})}, 64);
  ContinuationState st = continue_along_path(f, u1, p);
  CHECK(st.source_group == "U1");
  CHECK(st.partner_group == "Ctimes");
  CHECK(st.steps.size() == st.chain.centers.size() - 1);
  CHECK(std::abs(st.value - cd(std::exp(-0.6 * kPi), 0)) < 1e-10);
  for (const ContinuationStep& s : st.steps) CHECK(s.deviation < 1e-9);
  CHECK(st.error_estimate < 1e-6);
}

TEST_CASE("continuation validates its path") {
  const GroupModel& u1 = registry_get("U1");
  Field f = make_char_field(u1, 1);
  GroupPath wrong = path_from_segments(u1, std::vector<RVec>{coords({0.2})}, 16);
  CHECK_THROWS_AS(continue_along_path(f, u1, wrong), config_error);
  const GroupModel& ct = registry_get("Ctimes");
  CMat away = exp_group(ct, coords({0.2, 0}));
  GroupPath off = path_from_segments(ct, std::vector<RVec>{coords({0, 0.1})}, 16, &away);
  CHECK_THROWS_AS(continue_along_path(f, u1, off), config_error);
}

TEST_CASE("black-box continuation refuses with an order budget") {
  const GroupModel& r1 = registry_get("R1");
  Field f = make_rational_field(r1);
  const GroupModel& c1 = registry_get("C1");
  GroupPath p = path_from_segments(c1, std::vector<RVec>{coords({0.3, 0.2})}, 64);
  CHECK_THROWS_WITH(continue_along_path(f, r1, p),
                    Catch::Matchers::ContainsSubstring("field evaluations exceed the budget"));
}

TEST_CASE("value extension reaches exp(0.4 i H) from SL2R") {
  const GroupModel& sl2r = registry_get("SL2R");
  const GroupModel& sl2c = registry_get("SL2C");
  Field f = make_entry_field(sl2r);
  CMat target = exp_group(sl2c, coords({0, 0, 0, 0.4, 0, 0}));
  ExtensionResult ext = extend_value(f, sl2r, target);
  CHECK(std::abs(ext.value - std::exp(cd(0, 0.4))) < 1e-7);
  CHECK(ext.chain_steps > 0);
  CHECK(sup_abs(ext.residual_offset) < 1e-9);
  CHECK(ext.error_estimate < 1e-4);
}

TEST_CASE("value extension recovers the trace on a stretched diagonal") {
  const GroupModel& su2 = registry_get("SU2");
  Field f = make_trace_field(su2);
  CMat target(2, 2);
  target << cd(2, 0), cd(0, 0), cd(0, 0), cd(0.5, 0);
  ExtensionResult ext = extend_value(f, su2, target);
  CHECK(std::abs(ext.value - cd(2.5, 0)) < 1e-6);
}

TEST_CASE("value extension of the circle character is the punctured-plane power") {
  const GroupModel& u1 = registry_get("U1");
  const GroupModel& ct = registry_get("Ctimes");
  Field f = make_char_field(u1, 1);
  CMat target = exp_group(ct, coords({0, 0.3}));
  ExtensionResult ext = extend_value(f, u1, target);
  Field fc = complexify_field(f, u1);
  CHECK(std::abs(ext.value - field_eval(fc, target)) < 1e-9);
  CHECK(std::abs(ext.value - cd(std::exp(-0.6 * kPi), 0)) < 1e-9);
}

TEST_CASE("extension rejects targets outside the partner") {
  const GroupModel& sl2r = registry_get("SL2R");
  Field f = make_entry_field(sl2r);
  CMat bad(2, 2);
  bad << cd(2, 0), cd(0, 0), cd(0, 0), cd(2, 0);
  CHECK_THROWS_AS(extend_value(f, sl2r, bad), std::domain_error);
}

TEST_CASE("extension verification compares words and values") {
  const GroupModel& sl2r = registry_get("SL2R");
  const GroupModel& sl2c = registry_get("SL2C");
  Field f = make_entry_field(sl2r);
  std::vector<CMat> targets = {exp_group(sl2c, coords({0, 0, 0, 0.4, 0, 0})),
                               exp_group(sl2c, coords({0, 0, 0, 0, 0.25, 0}))};
  VerifyExtensionReport rep = verify_extension(f, sl2r, targets, 2, 5);
  CHECK(rep.samples == 5);
  CHECK(rep.words == 5 * (1 + 6 + 36));
  CHECK(rep.max_coeff_deviation < 1e-10);
  CHECK(rep.max_value_deviation < 1e-7);
}

TEST_CASE("extension verification needs an exact oracle") {
  const GroupModel& r1 = registry_get("R1");
  CHECK_THROWS_AS(verify_extension(make_rational_field(r1), r1, {}, 1, 2),
                  refusal_error);
}

TEST_CASE("homotopic paths continue to the same value") {
  const GroupModel& sl2r = registry_get("SL2R");
  const GroupModel& sl2c = registry_get("SL2C");
  Field f = make_entry_field(sl2r);
  RVec xi1 = coords({0, 0, 0, 0.3, 0, 0});
  RVec xi2 = coords({0, 0.25, 0, 0, 0, 0});
  CMat w = exp_group(sl2c, xi1) * exp_group(sl2c, xi2);
  RVec direct = log_group(sl2c, w);
  GroupPath a = path_from_segments(sl2c, std::vector<RVec>{direct}, 64);
  GroupPath b = path_from_segments(sl2c, std::vector<RVec>{xi1, xi2}, 64);
  PathIndependenceReport rep = path_independence_check(f, sl2r, a, b);
  CHECK(rep.pass);
  CHECK(rep.difference < 1e-9);
  CHECK(std::abs(rep.value_a - w(0, 0)) < 1e-9);
}

TEST_CASE("continued covering pullback is deck invariant") {
  const GroupModel& u1 = registry_get("U1");
  PeriodicityReport rep = periodicity_check(make_char_field(u1, 1), cd(0.3, 0.2), 1);
  CHECK(rep.pass);
  cd want = std::exp(cd(0, kTwoPi) * cd(0.3, 0.2));
  CHECK(std::abs(rep.value - want) < 1e-7);
  CHECK(std::abs(rep.value_shifted - want) < 1e-7);

  PeriodicityReport trig =
      periodicity_check(make_trig_poly_field(u1), cd(0, 0.1), 2);
  CHECK(trig.pass);
  double w = std::exp(-0.2 * kPi);
  cd direct = cd(2, 0) / cd(w, 0) + cd(3, 0) + cd(w * w, 0);
  CHECK(std::abs(trig.value - direct) < 1e-7);
}
