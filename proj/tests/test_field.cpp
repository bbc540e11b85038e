#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lietaylor/derive.hpp"
#include "lietaylor/field.hpp"

using namespace lietaylor;

namespace {

RVec coords(std::initializer_list<double> v) {
  RVec x(int(v.size()));
  int i = 0;
  for (double e : v) x(i++) = e;
  return x;
}

MultiIndex word(std::initializer_list<int> v) { return MultiIndex(v); }

}  // namespace

TEST_CASE("entry field reads a matrix coefficient") {
  const GroupModel& sl2r = registry_get("SL2R");
  Field f = make_entry_field(sl2r, 1, 1);
  CMat g = exp_group(sl2r, coords({0.3, 0, 0}));
  // exp(0.3 H) = diag(e^{0.3}, e^{-0.3})
  CHECK(std::abs(field_eval(f, g) - std::exp(cd(0.3, 0))) < 1e-14);
  CHECK(field_eval(f, sl2r.identity()) == cd(1, 0));
}

TEST_CASE("character fields are powers of the circle coordinate") {
  const GroupModel& u1 = registry_get("U1");
  for (int p : {-2, 1, 3}) {
    Field f = make_char_field(u1, p);
    double t = 0.17;
    cd want = std::exp(cd(0, kTwoPi * p * t));
    CHECK(std::abs(field_eval(f, exp_group(u1, coords({t}))) - want) < 1e-13);
  }
}

TEST_CASE("trace, constant and product fields evaluate directly") {
  const GroupModel& su2 = registry_get("SU2");
  CHECK(field_eval(make_trace_field(su2), su2.identity()) == cd(2, 0));

  Field c = make_const_field(su2, cd(7, 0));
  CHECK(field_eval(c, exp_group(su2, coords({0.1, 0.2, -0.3}))) == cd(7, 0));

  const GroupModel& sl2r = registry_get("SL2R");
  CMat g = exp_group(sl2r, coords({0.2, 0.4, -0.1}));
  cd want = g(0, 0) * g(1, 1);
  CHECK(std::abs(field_eval(make_entry_product_field(sl2r), g) - want) < 1e-14);
}

TEST_CASE("evaluating outside the group is a domain error") {
  const GroupModel& sl2r = registry_get("SL2R");
  Field f = make_entry_field(sl2r, 1, 1);
  CMat bad = 2.0 * sl2r.identity();  // det 4, not unimodular
  CHECK_THROWS_AS(field_eval_checked(f, sl2r, bad), std::domain_error);
}

TEST_CASE("iterated derivatives of the entry field at the identity") {
  const GroupModel& sl2r = registry_get("SL2R");
  Field f = make_entry_field(sl2r, 1, 1);
  CMat e = sl2r.identity();
  // L(alpha) phi(E) = (e_{a1} ... e_{an})_{11} for the standard representation
  CHECK(exact_lie_derivative(f, sl2r, e, word({1})) == cd(1, 0));   // H_11
  CHECK(exact_lie_derivative(f, sl2r, e, word({2, 3})) == cd(1, 0)); // (EF)_11
  CHECK(exact_lie_derivative(f, sl2r, e, word({3, 2})) == cd(0, 0)); // (FE)_11
  CHECK(exact_lie_derivative(f, sl2r, e, word({1, 2})) == cd(0, 0)); // (HE)_11
  CHECK(exact_lie_derivative(f, sl2r, e, MultiIndex{}) == cd(1, 0));

  // the pinned ordering acts rightmost-first: compare both orders on a word
  // whose reversals differ
  CMat h = sl2r.basis[0], ee = sl2r.basis[1];
  cd he = (h * ee)(0, 0), eh = (ee * h)(0, 0);
  CHECK(exact_lie_derivative(f, sl2r, e, word({1, 2})) == he);
  CHECK(exact_lie_derivative(f, sl2r, e, word({2, 1})) == eh);
}

TEST_CASE("adjoint entry derivative scales with the root") {
  const GroupModel& sl2r = registry_get("SL2R");
  Field f = make_adjoint_entry_field(sl2r, 2, 2);
  // Ad(exp(tH)) E = e^{2t} E, so the (2,2) adjoint entry at exp(0.3H) is e^{0.6}
  CMat g = exp_group(sl2r, coords({0.3, 0, 0}));
  CHECK(std::abs(field_eval(f, g) - std::exp(cd(0.6, 0))) < 1e-13);
}

TEST_CASE("derivatives are linear in the field") {
  const GroupModel& sl2r = registry_get("SL2R");
  Field a = make_entry_field(sl2r, 1, 2);
  Field b = make_trace_field(sl2r);
  Field lin = field_sum(field_scale(cd(2, 1), a), field_scale(cd(-0.5, 0), b));
  CMat g = exp_group(sl2r, coords({0.1, -0.2, 0.3}));
  for (const MultiIndex& alpha : {word({1}), word({2, 3}), word({3, 1, 2})}) {
    cd want = cd(2, 1) * exact_lie_derivative(a, sl2r, g, alpha) +
              cd(-0.5, 0) * exact_lie_derivative(b, sl2r, g, alpha);
    CHECK(std::abs(exact_lie_derivative(lin, sl2r, g, alpha) - want) < 1e-13);
  }
}

TEST_CASE("product fields obey the Leibniz expansion") {
  const GroupModel& sl2c = registry_get("SL2C");
  Field f = make_entry_product_field(sl2c);
  CMat g = exp_group(sl2c, coords({0.05, 0.1, -0.07, 0, 0.02, 0}));
  // cross-check the bitmask Leibniz sum against quadrature on the formula
  DerivMethod q = DerivMethod::quadrature();
  for (const MultiIndex& alpha : {word({1}), word({1, 2}), word({3, 2, 1})}) {
    cd exact = exact_lie_derivative(f, sl2c, g, alpha);
    cd quad = lie_derivative(f, sl2c, g, alpha, q);
    CHECK(std::abs(exact - quad) < 1e-8 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("pullback through the covering differentiates the composition") {
  const GroupModel& r1 = registry_get("R1");
  const GroupModel& u1 = registry_get("U1");
  Field chi = make_char_field(u1, 1);
  Field pulled = pullback_field(chi, circle_covering(), "cover");
  CMat x = exp_group(r1, coords({0.2}));
  // p(0.2) = e^{0.4 pi i}
  CHECK(std::abs(field_eval(pulled, x) - std::exp(cd(0, 0.4 * kPi))) < 1e-14);
  // d/dt e^{2 pi i t} brings down 2 pi i per derivative
  cd want = std::pow(cd(0, kTwoPi), 3) * std::exp(cd(0, 0.4 * kPi));
  CHECK(std::abs(exact_lie_derivative(pulled, r1, x, word({1, 1, 1})) - want) < 1e-10);
}

TEST_CASE("complexified fields agree on the embedded source") {
  const GroupModel& sl2r = registry_get("SL2R");
  const GroupModel& sl2c = registry_get("SL2C");
  GroupMorphism inc = complexification_morphism(sl2r);
  for (const Field& f : {make_entry_field(sl2r, 1, 2), make_trace_field(sl2r),
                         make_adjoint_entry_field(sl2r, 1, 1)}) {
    Field fc = complexify_field(f, sl2r);
    CHECK(fc.group == "SL2C");
    CMat g = exp_group(sl2r, coords({0.2, -0.1, 0.15}));
    CHECK(std::abs(field_eval(fc, inc.element_map(g)) - field_eval(f, g)) < 1e-13);
    // derivatives along embedded directions agree as well
    CMat e = sl2r.identity();
    for (int b = 1; b <= 3; ++b) {
      cd src = exact_lie_derivative(f, sl2r, e, word({b}));
      cd tgt = exact_lie_derivative(fc, sl2c, e, word({b}));
      CHECK(std::abs(src - tgt) < 1e-13);
    }
  }
}

TEST_CASE("regularity and oracle flags reflect construction") {
  const GroupModel& sl2c = registry_get("SL2C");
  CHECK(field_has_exact(make_entry_field(sl2c)));
  CHECK(field_regularity(make_entry_field(sl2c)) == Regularity::holomorphic);
  CHECK(field_formula_holomorphic(make_entry_field(sl2c)));
  CHECK_FALSE(field_has_exact(make_re_entry_field(sl2c)));
  CHECK_FALSE(field_formula_holomorphic(make_re_entry_field(sl2c)));
  const GroupModel& r1 = registry_get("R1");
  CHECK(field_formula_holomorphic(make_rational_field(r1)));
  CHECK_FALSE(field_has_exact(make_rational_field(r1)));
}

TEST_CASE("field names parse from the catalog syntax") {
  const GroupModel& u1 = registry_get("U1");
  CHECK(field_from_name(u1, "char:3").name == "char3");
  CHECK(std::abs(field_eval(field_from_name(u1, "const:2.5"), u1.identity()) - cd(2.5, 0)) <
        1e-15);
  Field lp = field_from_name(u1, "laurent:-1=2,0=3,2=1");
  CMat z = exp_group(u1, coords({0.13}));
  cd zz = z(0, 0);
  cd want = 2.0 / zz + 3.0 + zz * zz;
  CHECK(std::abs(field_eval(lp, z) - want) < 1e-13);
  CHECK_THROWS_AS(field_from_name(u1, "nonsense"), config_error);
  CHECK_THROWS_AS(field_from_name(u1, "laurent:oops"), config_error);
}

TEST_CASE("exp-trace evaluates the exponential of the trace") {
  const GroupModel& sl2r = registry_get("SL2R");
  CMat g = exp_group(sl2r, coords({0.4, 0.1, 0.1}));
  cd tr = g(0, 0) + g(1, 1);
  CHECK(std::abs(field_eval(make_exp_trace_field(sl2r), g) - std::exp(tr)) < 1e-13);
}
