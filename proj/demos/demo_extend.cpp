// Analytic continuation tour: an SL(2,R) matrix entry pushed to a complex
// group element, holomorphic periodicity of a circle character, and the
// Laurent route off the unit circle.

#include <iostream>
#include <string>

#include "lietaylor/extend.hpp"
#include "lietaylor/laurent.hpp"

using namespace lietaylor;

static std::string fmt(const cd& z) {
  return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         format_double(std::abs(z.imag())) + " i";
}

int main() {
  const GroupModel& sl2r = registry_get("SL2R");
  const GroupModel& sl2c = registry_get("SL2C");
  Field entry = make_entry_field(sl2r);

  RVec coords = RVec::Zero(6);
  coords(3) = 0.4;  // target exp(0.4 i H) = diag(e^{0.4 i}, e^{-0.4 i})
  CMat target = exp_group(sl2c, coords);
  ExtensionResult ext = extend_value(entry, sl2r, target);
  std::cout << "entry_11 at exp(0.4 i H) = " << fmt(ext.value) << "\n"
            << "  closed form e^{0.4 i}  = " << fmt(std::exp(cd(0, 0.4))) << "\n"
            << "  chain steps " << ext.chain_steps << ", error estimate "
            << format_double(ext.error_estimate) << ", residual offset "
            << format_double(sup_abs(ext.residual_offset)) << "\n";

  const GroupModel& u1 = registry_get("U1");
  Field ch = make_char_field(u1, 1);
  PeriodicityReport per = periodicity_check(ch, cd(0.3, 0.2), 1);
  std::cout << "char:1 at z = 0.3 + 0.2 i, shift by 1: |f(z + 1) - f(z)| = "
            << format_double(per.difference) << "  (" << (per.pass ? "pass" : "FAIL") << ")\n";

  Field trig = make_trig_poly_field(u1);
  cd t(0, 1.5);
  LaurentExtendResult lx = laurent_extend(trig, u1, t);
  cd direct = 2.0 / t + 3.0 + t * t;
  std::cout << "trigpoly at z = 1.5 i     = " << fmt(lx.value) << "\n"
            << "  closed form 2/z + 3 + z^2 = " << fmt(direct) << "  (zeta = " << fmt(lx.zeta)
            << ")\n";
  return 0;
}
