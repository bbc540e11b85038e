// Walkthrough of the majorant pipeline: Taylor data, majorant coefficients,
// the Frechet seminorm, a translation estimate, and the entirety heuristic.

#include <iostream>

#include "lietaylor/majorant.hpp"

using namespace lietaylor;

int main() {
  const GroupModel& u1 = registry_get("U1");
  Field ch = make_char_field(u1, 1);

  MajorantValue q = seminorm_q(ch, u1, 1.0, 40);
  std::cout << "q_1(char) on U1      = " << format_double(q.value) << "  (e^{2 pi} = "
            << format_double(std::exp(kTwoPi)) << ", tail " << format_double(q.tail) << ")\n";

  TaylorData t = taylor_data(ch, u1, u1.identity(), 8, DerivMethod::exact());
  MajorantSeries m = majorant_coefficients(t);
  std::cout << "majorant c_0..c_4    =";
  for (int n = 0; n <= 4; ++n) std::cout << " " << format_double(m.c[size_t(n)]);
  std::cout << "  ((2 pi)^n / n!)\n";

  const GroupModel& sl2r = registry_get("SL2R");
  Field entry = make_entry_field(sl2r);
  RVec g_coords(3), xi(3);
  g_coords << 0.2, -0.1, 0.15;
  xi << 0.1, 0.05, -0.08;
  TranslationReport tr =
      translation_check(entry, sl2r, exp_group(sl2r, g_coords), xi, 0.5, 8, 4);
  std::cout << "translation estimate: |phi(g exp xi)| = " << format_double(tr.lhs)
            << " <= " << format_double(tr.rhs_value + tr.rhs_tail) << "  ("
            << (tr.pass ? "pass" : "FAIL") << ", tail " << tr.tail_kind << ")\n";

  TaylorData deep = taylor_data(ch, u1, u1.identity(), 300, DerivMethod::exact());
  EntiretyVerdict ent = entirety_heuristic(majorant_coefficients(deep));
  std::cout << "entirety of char     : " << ent.verdict << " (estimate "
            << format_double(ent.est) << ")\n";

  const GroupModel& r1 = registry_get("R1");
  Field rat = make_rational_field(r1);
  TaylorData pole = taylor_data(rat, r1, r1.identity(), 40, preferred_method(rat, r1));
  EntiretyVerdict entr = entirety_heuristic(majorant_coefficients(pole));
  std::cout << "entirety of rational : " << entr.verdict << " (estimate "
            << format_double(entr.est) << ", poles at +-i)\n";
  return 0;
}
