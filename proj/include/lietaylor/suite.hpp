#pragma once

// Deterministic verification suite: one function per headline criterion,
// each returning a pass flag plus the measured extremes. All randomness is
// drawn from fixed-seed engines before any parallel region, and parallel
// work writes indexed slots, so the emitted JSONL is byte-stable across
// runs and thread counts.

#include <random>

#include "lietaylor/jsonio.hpp"

namespace lietaylor {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  json details;
};

namespace suite_detail {

inline RVec random_vec(std::mt19937_64& rng, int d, double amp) {
  std::uniform_real_distribution<double> u(-amp, amp);
  RVec v(d);
  for (int i = 0; i < d; ++i) v(i) = u(rng);
  return v;
}

// Holomorphic-direction words on SL(2,C): entries restricted to {1,2,3}.
inline std::vector<MultiIndex> holo_words(int max_order) {
  std::vector<MultiIndex> words;
  for (int n = 0; n <= max_order; ++n) {
    std::int64_t total = pow_i64(3, n);
    for (std::int64_t r = 0; r < total; ++r) {
      MultiIndex alpha(static_cast<size_t>(n));
      std::int64_t q = r;
      for (int i = n - 1; i >= 0; --i) {
        alpha[size_t(i)] = int(q % 3) + 1;
        q /= 3;
      }
      words.push_back(alpha);
    }
  }
  return words;
}

inline CriterionResult quadrature_vs_exact() {
  CriterionResult res;
  res.number = 1;
  res.name = "cauchy-quadrature matches exact derivatives on SL2C, orders <= 4";
  const GroupModel& g = registry_get("SL2C");
  RVec xi(6), xi2(6);
  xi << 0.11, 0.23, -0.17, 0.05, -0.13, 0.08;
  xi2 << -0.07, 0.12, 0.19, -0.11, 0.06, -0.09;
  CMat base = exp_group(g, xi) * exp_group(g, xi2);
  std::vector<Field> fields;
  fields.push_back(make_entry_field(g, 1, 1));
  fields.push_back(make_adjoint_entry_field(g, 1, 2));
  std::vector<MultiIndex> words = holo_words(4);
  double worst = 0;
  json per_field = json::array();
  for (const Field& f : fields) {
    std::vector<double> devs(words.size(), 0.0);
    parallel_for(std::int64_t(words.size()), [&](std::int64_t i) {
      const MultiIndex& alpha = words[size_t(i)];
      cd exact = exact_lie_derivative(f, g, base, alpha);
      cd quad = lie_derivative(f, g, base, alpha, DerivMethod::quadrature());
      devs[size_t(i)] = std::abs(quad - exact) / (1.0 + std::abs(exact));
    });
    double mx = 0;
    for (double d : devs) mx = std::max(mx, d);
    per_field.push_back(json{{"field", f.name}, {"words", words.size()}, {"max_rel_dev", mx}});
    worst = std::max(worst, mx);
  }
  res.pass = worst <= 1e-8;
  res.details = json{{"max_rel_dev", worst}, {"fields", per_field}, {"tolerance", 1e-8}};
  return res;
}

inline CriterionResult taylor_vs_direct() {
  CriterionResult res;
  res.number = 2;
  res.name = "order-12 Taylor evaluation matches direct evaluation on SL2R";
  const GroupModel& g = registry_get("SL2R");
  Field f = make_entry_field(g, 1, 1);
  TaylorData t = taylor_data(f, g, g.identity(), 12, DerivMethod::exact());
  std::mt19937_64 rng(12345);
  std::vector<RVec> xis;
  for (int s = 0; s < 50; ++s) xis.push_back(random_vec(rng, 3, 0.3));
  std::vector<double> devs(xis.size(), 0.0);
  parallel_for(std::int64_t(xis.size()), [&](std::int64_t i) {
    cd approx = taylor_eval(t, xis[size_t(i)]);
    cd direct = field_eval(f, exp_group(g, xis[size_t(i)]));
    devs[size_t(i)] = std::abs(approx - direct);
  });
  double worst = 0;
  for (double d : devs) worst = std::max(worst, d);
  res.pass = worst <= 1e-8;
  res.details = json{{"max_dev", worst}, {"samples", xis.size()}, {"tolerance", 1e-8}};
  return res;
}

inline CriterionResult circle_seminorm() {
  CriterionResult res;
  res.number = 3;
  res.name = "q_1 of the coordinate character on U1 equals e^{2 pi}";
  const GroupModel& g = registry_get("U1");
  Field f = make_char_field(g, 1);
  double q = seminorm_q(f, g, 1.0, 40).value;
  double expected = std::exp(kTwoPi);
  double rel = std::abs(q - expected) / expected;
  res.pass = rel <= 1e-6;
  res.details = json{{"q", q}, {"expected", expected}, {"rel_dev", rel}, {"tolerance", 1e-6}};
  return res;
}

inline CriterionResult cauchy_riemann_battery() {
  CriterionResult res;
  res.number = 4;
  res.name = "Cauchy-Riemann residuals: holomorphic fields vanish, the real-part control does not";
  const GroupModel& g = registry_get("SL2C");
  std::vector<Field> holo;
  holo.push_back(make_entry_field(g, 1, 1));
  holo.push_back(make_entry_field(g, 2, 1));
  holo.push_back(make_trace_field(g));
  holo.push_back(make_entry_product_field(g));
  holo.push_back(make_adjoint_entry_field(g, 1, 1));
  Field control = make_re_entry_field(g);
  std::mt19937_64 rng(777);
  std::vector<CMat> points;
  for (int s = 0; s < 100; ++s)
    points.push_back(CMat(exp_group(g, random_vec(rng, 6, 0.2)) * exp_group(g, random_vec(rng, 6, 0.2))));
  double worst_holo = 0;
  std::vector<double> slots(points.size() * holo.size(), 0.0);
  parallel_for(std::int64_t(slots.size()), [&](std::int64_t i) {
    size_t p = size_t(i) / holo.size(), fi = size_t(i) % holo.size();
    slots[size_t(i)] = cauchy_riemann_residual(holo[fi], g, points[p]);
  });
  for (double d : slots) worst_holo = std::max(worst_holo, d);
  std::vector<double> ctrl(points.size(), 0.0);
  parallel_for(std::int64_t(points.size()), [&](std::int64_t i) {
    ctrl[size_t(i)] = cauchy_riemann_residual(control, g, points[size_t(i)]);
  });
  double min_ctrl = std::numeric_limits<double>::infinity();
  for (double d : ctrl) min_ctrl = std::min(min_ctrl, d);
  res.pass = worst_holo <= 1e-8 && min_ctrl >= 0.5;
  res.details = json{{"max_holomorphic_residual", worst_holo},
                     {"min_control_residual", min_ctrl},
                     {"points", points.size()},
                     {"holomorphic_fields", holo.size()}};
  return res;
}

struct CauchyConfig {
  std::string group;
  int field_pick = 0;
  RVec g1, g2, xi0;
  std::vector<RVec> dirs;
  double r = 0.5;
};

inline Field pick_field(const GroupModel& g, int pick) {
  if (g.kind == MembershipKind::nonzero_scalar) {
    switch (pick % 4) {
      case 0: return make_char_field(g, 1);
      case 1: return make_char_field(g, 2);
      case 2: return make_char_field(g, 3);
      default: return make_const_field(g, cd(1.5, -0.5));
    }
  }
  if (g.kind == MembershipKind::unipotent_complex) {
    switch (pick % 3) {
      case 0: return make_entry_field(g, 1, g.m);
      case 1: return make_trace_field(g);
      default: return make_entry_field(g, 1, 2);
    }
  }
  switch (pick % 4) {
    case 0: return make_entry_field(g, 1, 1);
    case 1: return make_trace_field(g);
    case 2: return make_entry_product_field(g);
    default: return make_adjoint_entry_field(g, 1, 2);
  }
}

inline CriterionResult cauchy_batteries() {
  CriterionResult res;
  res.number = 5;
  res.name = "Cauchy estimates (operator and Riemannian) hold on every complex registry group";
  std::vector<std::string> groups{"Ctimes", "C1", "C2", "C3", "C4", "SL2C"};
  int violations = 0;
  std::int64_t checks = 0;
  double min_slack_rel = std::numeric_limits<double>::infinity();
  json per_group = json::array();
  for (const std::string& name : groups) {
    const GroupModel& g = registry_get(name);
    MetricModel metric = make_metric(g);
    std::mt19937_64 rng(1000 + std::hash<std::string>{}(name) % 1000);
    std::vector<CauchyConfig> configs;
    std::uniform_int_distribution<int> pick(0, 3), ndirs(1, 5);
    std::uniform_real_distribution<double> rad(0.2, 1.0);
    for (int s = 0; s < 200; ++s) {
      CauchyConfig c;
      c.group = name;
      c.field_pick = pick(rng);
      c.g1 = random_vec(rng, g.d, 0.4);
      c.g2 = random_vec(rng, g.d, 0.4);
      c.xi0 = random_vec(rng, g.d, 0.25);
      int n = ndirs(rng);
      for (int k = 0; k < n; ++k) {
        RVec dir = random_vec(rng, g.d, 1.0);
        if (sup_abs(dir) < 0.2) dir(0) += 0.5;
        c.dirs.push_back(dir);
      }
      c.r = rad(rng);
      configs.push_back(c);
    }
    std::vector<double> slack(configs.size() * 2, 0.0);
    std::vector<int> bad(configs.size() * 2, 0);
    parallel_for(std::int64_t(configs.size()), [&](std::int64_t i) {
      const CauchyConfig& c = configs[size_t(i)];
      Field f = pick_field(g, c.field_pick);
      CMat base = exp_group(g, c.g1) * exp_group(g, c.g2);
      CauchyReport op = cauchy_check_operator(f, g, base, c.xi0, c.dirs, c.r);
      CauchyReport rm = cauchy_check_riemannian(f, g, metric, base, c.xi0, c.dirs, c.r);
      slack[size_t(2 * i)] = op.slack / std::max(1.0, op.rhs);
      slack[size_t(2 * i + 1)] = rm.slack / std::max(1.0, rm.rhs);
      bad[size_t(2 * i)] = op.pass ? 0 : 1;
      bad[size_t(2 * i + 1)] = rm.pass ? 0 : 1;
    });
    int group_bad = 0;
    double group_min = std::numeric_limits<double>::infinity();
    for (int b : bad) group_bad += b;
    for (double s : slack) group_min = std::min(group_min, s);
    violations += group_bad;
    checks += std::int64_t(slack.size());
    min_slack_rel = std::min(min_slack_rel, group_min);
    per_group.push_back(json{{"group", name}, {"violations", group_bad}, {"min_slack_rel", group_min}});
  }
  res.pass = violations == 0;
  res.details = json{{"violations", violations}, {"checks", checks},
                     {"min_slack_rel", min_slack_rel}, {"groups", per_group}};
  return res;
}

inline CriterionResult exp_norm_battery() {
  CriterionResult res;
  res.number = 6;
  res.name = "operator norm of exp(xi) is at most exp(norm of xi) on every registered algebra";
  std::mt19937_64 rng(4242);
  int violations = 0;
  std::int64_t checks = 0;
  double worst_rel = 0;
  for (const std::string& name : registry_names()) {
    const GroupModel& g = registry_get(name);
    std::vector<RVec> xis;
    for (int s = 0; s < 1000; ++s) xis.push_back(random_vec(rng, g.d, 2.0));
    std::vector<double> rel(xis.size(), 0.0);
    parallel_for(std::int64_t(xis.size()), [&](std::int64_t i) {
      CauchyReport r = exp_norm_check(g, xis[size_t(i)]);
      rel[size_t(i)] = (r.lhs - r.rhs) / std::max(1.0, r.rhs);
    });
    for (double d : rel) {
      worst_rel = std::max(worst_rel, d);
      if (d > 1e-12) ++violations;
    }
    checks += std::int64_t(xis.size());
  }
  res.pass = violations == 0;
  res.details = json{{"violations", violations}, {"checks", checks}, {"worst_rel_excess", worst_rel}};
  return res;
}

inline CriterionResult steiner_batteries() {
  CriterionResult res;
  res.number = 7;
  res.name = "Steiner chains cover their paths and link consecutive centers";
  const GroupModel& g = registry_get("SL2C");
  MetricModel metric = make_metric(g);
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> nseg(2, 3);
  int bad = 0, chains = 0;
  double worst_cover = 0, worst_link = 0;
  for (int s = 0; s < 20; ++s) {
    std::vector<RVec> segs;
    int k = nseg(rng);
    for (int j = 0; j < k; ++j) segs.push_back(random_vec(rng, 6, 0.35));
    GroupPath path = path_from_segments(g, segs);
    for (double r : {0.1, 0.25}) {
      SteinerChain chain = steiner_chain(g, metric, path, r);
      ChainCheck c = verify_chain(g, metric, path, chain);
      ++chains;
      worst_cover = std::max(worst_cover, c.worst_cover / chain.r);
      worst_link = std::max(worst_link, c.worst_link / chain.r);
      if (!c.covered || !c.linked) ++bad;
    }
  }
  res.pass = bad == 0;
  res.details = json{{"chains", chains}, {"failures", bad},
                     {"worst_cover_over_r", worst_cover}, {"worst_link_over_r", worst_link}};
  return res;
}

inline CriterionResult continuation_battery() {
  CriterionResult res;
  res.number = 8;
  res.name = "continuation of the SL2R entry field matches its direct complexification";
  const GroupModel& src = registry_get("SL2R");
  const GroupModel& tgt = registry_get("SL2C");
  Field f = make_entry_field(src, 1, 1);
  std::vector<CMat> targets;
  {
    RVec a = RVec::Zero(6), b = RVec::Zero(6);
    a(3) = 0.4;  // 0.4 i H
    b(1) = 0.3;  // 0.3 E
    targets.push_back(CMat(exp_group(tgt, a) * exp_group(tgt, b)));
  }
  std::mt19937_64 rng(2718);
  while (targets.size() < 10) targets.push_back(exp_group(tgt, random_vec(rng, 6, 0.35)));
  VerifyExtensionReport rep = verify_extension(f, src, targets, 3, 20, 31415);
  res.pass = rep.max_value_deviation <= 1e-6 && rep.max_coeff_deviation <= 1e-10;
  res.details = json{{"targets", targets.size()},
                     {"max_value_dev", rep.max_value_deviation},
                     {"max_coeff_dev", rep.max_coeff_deviation},
                     {"samples", rep.samples},
                     {"words", rep.words}};
  return res;
}

inline CriterionResult ordering_independence() {
  CriterionResult res;
  res.number = 9;
  res.name = "continuation values agree across segment orderings";
  const GroupModel& src = registry_get("SL2R");
  const GroupModel& tgt = registry_get("SL2C");
  Field f = make_entry_field(src, 1, 1);
  std::mt19937_64 rng(5050);
  double worst = 0;
  int cases = 5;
  for (int s = 0; s < cases; ++s) {
    RVec a = random_vec(rng, 6, 0.3), b = random_vec(rng, 6, 0.3);
    CMat target = exp_group(tgt, a) * exp_group(tgt, b);
    GroupPath pa = path_from_segments(tgt, std::vector<RVec>{a, b});
    RVec c = log_group(tgt, CMat(exp_group(tgt, b).inverse() * target));
    GroupPath pb = path_from_segments(tgt, std::vector<RVec>{b, c});
    PathIndependenceReport rep = path_independence_check(f, src, pa, pb);
    worst = std::max(worst, rep.difference);
  }
  res.pass = worst <= 1e-6;
  res.details = json{{"cases", cases}, {"max_difference", worst}, {"tolerance", 1e-6}};
  return res;
}

inline CriterionResult periodicity_battery() {
  CriterionResult res;
  res.number = 10;
  res.name = "continued covering pullbacks are deck-transformation periodic";
  const GroupModel& u1 = registry_get("U1");
  Field ident = make_char_field(u1, 1);
  Field trig = make_trig_poly_field(u1);
  double worst = 0;
  int cases = 0;
  for (int j = 0; j < 10; ++j) {
    double re = -0.9 + 0.2 * j;
    double im = (j % 2 == 0 ? 0.3 : -0.25);
    cd z(re, im);
    int shift = (j % 3 == 0) ? 2 : ((j % 3 == 1) ? 1 : -1);
    const Field& f = (j < 6) ? ident : trig;
    PeriodicityReport rep = periodicity_check(f, z, shift);
    worst = std::max(worst, rep.difference);
    ++cases;
  }
  res.pass = worst <= 1e-8;
  res.details = json{{"cases", cases}, {"max_difference", worst}, {"tolerance", 1e-8}};
  return res;
}

inline CriterionResult translation_battery() {
  CriterionResult res;
  res.number = 11;
  res.name = "translated majorants are dominated by recentered majorants";
  std::mt19937_64 rng(6006);
  double min_slack = std::numeric_limits<double>::infinity();
  int violations = 0, checks = 0;
  struct Case {
    std::string group;
    Field field;
  };
  std::vector<Case> cases;
  cases.push_back({"U1", make_char_field(registry_get("U1"), 1)});
  cases.push_back({"Ctimes", make_char_field(registry_get("Ctimes"), 2)});
  cases.push_back({"R2", make_entry_field(registry_get("R2"), 1, 3)});
  cases.push_back({"SL2R", make_entry_field(registry_get("SL2R"), 1, 1)});
  std::uniform_real_distribution<double> rad(0.1, 1.0);
  for (int s = 0; s < 50; ++s) {
    const Case& c = cases[size_t(s) % cases.size()];
    const GroupModel& g = registry_get(c.group);
    RVec gc = random_vec(rng, g.d, 0.3);
    RVec xi = random_vec(rng, g.d, 0.25);
    double r = rad(rng);
    TranslationReport rep =
        translation_check(c.field, g, exp_group(g, gc), xi, r, 8, 4, DerivMethod::exact());
    min_slack = std::min(min_slack, rep.slack);
    if (rep.slack < -1e-12) ++violations;
    ++checks;
  }
  res.pass = violations == 0;
  res.details = json{{"checks", checks}, {"violations", violations}, {"min_slack", min_slack}};
  return res;
}

inline CriterionResult laurent_battery() {
  CriterionResult res;
  res.number = 12;
  res.name = "Laurent coefficients are recovered exactly and satisfy the moment identity";
  const GroupModel& u1 = registry_get("U1");
  std::mt19937_64 rng(321);
  std::uniform_real_distribution<double> amp(-0.01, 0.01);
  double worst_recover = 0, worst_identity = 0;
  int cases = 8;
  for (int s = 0; s < cases; ++s) {
    std::vector<std::pair<int, cd>> terms;
    for (int n = -2; n <= 2; ++n) terms.push_back({n, cd(amp(rng), amp(rng))});
    Field f = make_laurent_poly_field(u1, terms);
    LaurentData L = laurent_coefficients(f, u1, 2, 2, 64);
    for (const auto& [n, c] : terms)
      worst_recover = std::max(worst_recover, std::abs(L.at(n) - c));
    LaurentIdentityReport idr = laurent_lie_taylor_check(f, u1, 6, L);
    worst_identity = std::max(worst_identity, idr.max_deviation);
  }
  res.pass = worst_recover <= 1e-12 && worst_identity <= 1e-9;
  res.details = json{{"cases", cases},
                     {"max_recovery_dev", worst_recover},
                     {"max_identity_dev", worst_identity}};
  return res;
}

}  // namespace suite_detail

inline std::vector<CriterionResult> run_suite() {
  std::vector<CriterionResult> out;
  out.push_back(suite_detail::quadrature_vs_exact());
  out.push_back(suite_detail::taylor_vs_direct());
  out.push_back(suite_detail::circle_seminorm());
  out.push_back(suite_detail::cauchy_riemann_battery());
  out.push_back(suite_detail::cauchy_batteries());
  out.push_back(suite_detail::exp_norm_battery());
  out.push_back(suite_detail::steiner_batteries());
  out.push_back(suite_detail::continuation_battery());
  out.push_back(suite_detail::ordering_independence());
  out.push_back(suite_detail::periodicity_battery());
  out.push_back(suite_detail::translation_battery());
  out.push_back(suite_detail::laurent_battery());
  return out;
}

inline std::string suite_jsonl(const std::vector<CriterionResult>& results) {
  std::string out;
  for (const CriterionResult& r : results) {
    json line{{"criterion", r.number}, {"name", r.name}, {"pass", r.pass}, {"details", r.details}};
    out += line.dump();
    out += "\n";
  }
  return out;
}

}  // namespace lietaylor
