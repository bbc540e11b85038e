#pragma once

// Cauchy estimates on complex groups: analytic sup envelopes for the built-in
// fields, operator-radius and Riemannian-radius derivative bounds, the
// exponential norm inequality, and the seminorm restriction inequality.

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lietaylor/majorant.hpp"
#include "lietaylor/riemann.hpp"

namespace lietaylor {

// Monotone bound for sup |phi| over {x in G : ||x||_op <= R}, with a short
// justification of the inequality it encodes.
struct SupEnvelope {
  std::string field_name;
  std::string justification;
  std::function<double(double)> bound;
};

namespace detail {

struct EnvExpr {
  bool ok = false;
  std::function<double(double)> bound;
  std::string why;
};

inline EnvExpr envelope_of_expr(const FieldExpr& e, const GroupModel& model);

inline EnvExpr envelope_of_atom(const RepAtom& atom, const GroupModel& model) {
  EnvExpr out;
  switch (atom.rho_kind) {
    case RhoKind::standard: {
      double pv = atom.phi.norm() * atom.v.norm();
      out.ok = true;
      out.bound = [pv](double R) { return pv * R; };
      out.why = "matrix coefficient of the standard representation is at most |phi||v| R";
      return out;
    }
    case RhoKind::power: {
      int p = atom.power;
      if (p < 0) return out;
      out.ok = true;
      out.bound = [p](double R) { return std::pow(R, p); };
      out.why = "entry of a 1x1 element to the power " + std::to_string(p) +
                " is at most R^" + std::to_string(p);
      return out;
    }
    case RhoKind::adjoint: {
      // Only certified for 2x2 determinant-one groups, where ||g^{-1}|| = ||g||
      // and the H,E,F coefficient extraction has norm sqrt(2).
      if (model.m != 2 ||
          (model.kind != MembershipKind::special_linear_complex &&
           model.kind != MembershipKind::special_linear_real &&
           model.kind != MembershipKind::special_unitary))
        return out;
      double pv = atom.phi.norm() * atom.v.norm();
      out.ok = true;
      out.bound = [pv](double R) { return pv * std::sqrt(2.0) * R * R; };
      out.why = "adjoint entries obey |Ad(g)_{ij}| <= sqrt(2) ||g|| ||g^{-1}|| with ||g^{-1}|| = ||g|| for 2x2 det-one groups";
      return out;
    }
  }
  return out;
}

inline EnvExpr envelope_of_expr(const FieldExpr& e, const GroupModel& model) {
  using K = FieldExpr::Kind;
  EnvExpr out;
  switch (e.kind) {
    case K::rep: return envelope_of_atom(e.atom, model);
    case K::constant: {
      double c = std::abs(e.value);
      out.ok = true;
      out.bound = [c](double) { return c; };
      out.why = "constant field";
      return out;
    }
    case K::blackbox: return out;
    case K::sum: {
      EnvExpr a = envelope_of_expr(*e.a, model), b = envelope_of_expr(*e.b, model);
      if (!a.ok || !b.ok) return out;
      out.ok = true;
      out.bound = [a, b](double R) { return a.bound(R) + b.bound(R); };
      out.why = "sum of envelopes";
      return out;
    }
    case K::product: {
      EnvExpr a = envelope_of_expr(*e.a, model), b = envelope_of_expr(*e.b, model);
      if (!a.ok || !b.ok) return out;
      out.ok = true;
      out.bound = [a, b](double R) { return a.bound(R) * b.bound(R); };
      out.why = "product of envelopes";
      return out;
    }
    case K::scale: {
      EnvExpr a = envelope_of_expr(*e.a, model);
      if (!a.ok) return out;
      double c = std::abs(e.value);
      out.ok = true;
      out.bound = [a, c](double R) { return c * a.bound(R); };
      out.why = "scaled envelope";
      return out;
    }
    case K::pullback: {
      const GroupModel& tgt = registry_get(e.mor.target);
      EnvExpr a = envelope_of_expr(*e.a, tgt);
      if (!a.ok) return out;
      out.ok = true;
      if (e.mor.tag == "cover") {
        // |z| <= ||x||_op for the unipotent realization, and the covering image
        // e^{2 pi i z} has modulus at most e^{2 pi |z|}.
        out.bound = [a](double R) { return a.bound(std::exp(kTwoPi * R)); };
        out.why = "cover lift: image norm at most exp(2 pi R); " + a.why;
      } else {
        out.bound = a.bound;
        out.why = "isometric inclusion; " + a.why;
      }
      return out;
    }
  }
  return out;
}

}  // namespace detail

inline std::optional<SupEnvelope> catalog_envelope(const Field& f, const GroupModel& model) {
  // exp(trace) is evaluated as a black box but has the obvious envelope.
  if (f.name == "exptrace") {
    SupEnvelope env;
    env.field_name = f.name;
    int m = model.m;
    env.bound = [m](double R) { return std::exp(m * R); };
    env.justification = "|exp(tr g)| <= exp(m ||g||)";
    return env;
  }
  detail::EnvExpr e = detail::envelope_of_expr(*f.root, model);
  if (!e.ok) return std::nullopt;
  SupEnvelope env;
  env.field_name = f.name;
  env.bound = e.bound;
  env.justification = e.why;
  return env;
}

struct CauchyReport {
  std::string check;  // "cauchy-operator", "cauchy-riemannian", "exp-norm"
  int order = 0;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  bool pass = false;
  std::string note;
};

namespace detail {

inline double basis_opnorm_sum(const GroupModel& model) {
  double s = 0;
  for (const CMat& b : model.basis) s += op_norm(b);
  return s;
}

inline double basis_opnorm_sq_sum(const GroupModel& model) {
  double s = 0;
  for (const CMat& b : model.basis) s += op_norm(b) * op_norm(b);
  return s;
}

inline cd derivative_normalized_dirs(const Field& f, const GroupModel& model, const CMat& base,
                                     const std::vector<CVecX>& dirs) {
  if (field_has_exact(f)) return exact_lie_derivative_dirs(f, model, base, dirs);
  if (!model.is_complex || field_regularity(f) != Regularity::holomorphic)
    throw refusal_error("no usable derivative oracle for field '" + f.name + "'");
  std::vector<CMat> mats;
  for (const CVecX& c : dirs) {
    CMat m = CMat::Zero(model.m, model.m);
    for (int b = 0; b < model.d; ++b) m += c(b) * model.basis[size_t(b)];
    mats.push_back(m);
  }
  return quadrature_derivative_dirs(f, model, base, mats, 32, 0.5);
}

}  // namespace detail

// |L(u_1...u_n) phi (g exp(xi0))| <= env(||g|| e^{k0} e^r) n^n / r^n with
// operator-normalized directions; k0 = |xi0|_inf sum_i ||e_i||_op bounds the
// K0 coordinate ball in operator norm.
inline CauchyReport cauchy_check_operator(const Field& f, const GroupModel& model, const CMat& g,
                                          const RVec& xi0, const std::vector<RVec>& dirs, double r,
                                          const std::optional<SupEnvelope>& env_in = std::nullopt) {
  if (!model.is_complex)
    throw refusal_error("cauchy estimate needs a complex group, got " + model.name);
  if (!(r > 0)) throw config_error("cauchy estimate needs radius r > 0");
  std::optional<SupEnvelope> env = env_in ? env_in : catalog_envelope(f, model);
  if (!env)
    throw refusal_error("no analytic sup envelope available for field '" + f.name + "'");
  CauchyReport rep;
  rep.check = "cauchy-operator";
  rep.order = int(dirs.size());
  CMat base = g * exp_group(model, xi0);
  std::vector<CVecX> ndirs;
  for (const RVec& v : dirs) {
    CMat m = model.algebra_element(v);
    double nn = op_norm(m);
    if (!(nn > 0)) throw config_error("cauchy estimate: zero direction");
    CVecX c(model.d);
    for (int b = 0; b < model.d; ++b) c(b) = cd(v(b) / nn, 0);
    ndirs.push_back(c);
  }
  rep.lhs = std::abs(detail::derivative_normalized_dirs(f, model, base, ndirs));
  double k0 = sup_abs(xi0) * detail::basis_opnorm_sum(model);
  double big_r = op_norm(g) * std::exp(k0) * std::exp(r);
  int n = rep.order;
  rep.rhs = env->bound(big_r) * (n >= 1 ? std::pow(double(n), n) / std::pow(r, n) : 1.0);
  rep.slack = rep.rhs - rep.lhs;
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-9);
  rep.note = env->justification;
  return rep;
}

// Same estimate with the metric ball: directions normalized in the metric,
// and the radius converted by kappa_hat = sqrt(sum ||e_i||_op^2 / lambda_min).
inline CauchyReport cauchy_check_riemannian(const Field& f, const GroupModel& model,
                                            const MetricModel& metric, const CMat& g,
                                            const RVec& xi0, const std::vector<RVec>& dirs,
                                            double r,
                                            const std::optional<SupEnvelope>& env_in = std::nullopt) {
  if (!model.is_complex)
    throw refusal_error("cauchy estimate needs a complex group, got " + model.name);
  if (!(r > 0)) throw config_error("cauchy estimate needs radius r > 0");
  std::optional<SupEnvelope> env = env_in ? env_in : catalog_envelope(f, model);
  if (!env)
    throw refusal_error("no analytic sup envelope available for field '" + f.name + "'");
  CauchyReport rep;
  rep.check = "cauchy-riemannian";
  rep.order = int(dirs.size());
  CMat base = g * exp_group(model, xi0);
  std::vector<CVecX> ndirs;
  for (const RVec& v : dirs) {
    double nn = gnorm(metric, v);
    if (!(nn > 0)) throw config_error("cauchy estimate: zero direction");
    CVecX c(model.d);
    for (int b = 0; b < model.d; ++b) c(b) = cd(v(b) / nn, 0);
    ndirs.push_back(c);
  }
  rep.lhs = std::abs(detail::derivative_normalized_dirs(f, model, base, ndirs));
  double k0 = sup_abs(xi0) * detail::basis_opnorm_sum(model);
  double kappa_hat = std::sqrt(detail::basis_opnorm_sq_sum(model) / metric.lambda_min);
  double big_r = op_norm(g) * std::exp(k0) * std::exp(kappa_hat * r);
  int n = rep.order;
  rep.rhs = env->bound(big_r) * (n >= 1 ? std::pow(double(n), n) / std::pow(r, n) : 1.0);
  rep.slack = rep.rhs - rep.lhs;
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-9);
  rep.note = env->justification;
  return rep;
}

inline CauchyReport exp_norm_check(const GroupModel& model, const RVec& xi) {
  CauchyReport rep;
  rep.check = "exp-norm";
  CMat m = model.algebra_element(xi);
  rep.lhs = op_norm(expm(m));
  rep.rhs = std::exp(op_norm(m));
  rep.slack = rep.rhs - rep.lhs;
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-12);
  return rep;
}

// S_N = sum_{n<=N} n!/n^n, the order-wise constant of the restriction bound.
inline double restriction_series(int N) {
  KahanSum acc;
  acc.add(1.0);
  for (int n = 1; n <= N; ++n) acc.add(factorial(n) / std::pow(double(n), n));
  return acc.value();
}

struct RestrictionReport {
  double q_value = 0;        // truncated seminorm q_r
  double rhs_forward = 0;    // env(exp(d B r e^2)) * S_N
  bool forward_pass = false;
  double sup_sampled = 0;    // max |phi| over sampled g exp(K0)
  double rhs_reverse = 0;    // truncated majorant at radius 1 plus tail
  std::string tail_kind;
  bool reverse_pass = false;
};

// Forward: per-order Cauchy radii s_n = d B r n^2 / (n!)^{2/n} increase to
// d B r e^2, so q_r <= env(exp(d B r e^2)) S_N. Reverse: point values inside
// g exp(K0) are dominated by the majorant at radius one.
inline RestrictionReport restriction_bound_check(const Field& f, const GroupModel& model,
                                                 const CMat& g, double r, int N,
                                                 std::uint64_t seed = 20240911,
                                                 const DerivMethod& method = DerivMethod::exact()) {
  if (!model.is_complex)
    throw refusal_error("restriction bound needs a complex group, got " + model.name);
  std::optional<SupEnvelope> env = catalog_envelope(f, model);
  if (!env)
    throw refusal_error("no analytic sup envelope available for field '" + f.name + "'");
  RestrictionReport rep;
  TaylorData t = taylor_data(f, model, g, N, method);
  MajorantSeries m = majorant_coefficients(t, 0);
  rep.q_value = majorant_eval(m, r).value;
  double b_max = 0;
  for (const CMat& b : model.basis) b_max = std::max(b_max, op_norm(b));
  double s_lim = model.d * b_max * r * std::exp(2.0);
  double g_norm = op_norm(g);
  rep.rhs_forward = env->bound(g_norm * std::exp(s_lim)) * restriction_series(N);
  rep.forward_pass = rep.q_value <= rep.rhs_forward * (1.0 + 1e-9);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  double sup = 0;
  for (int s = 0; s < 50; ++s) {
    RVec xi0(model.d);
    for (int b = 0; b < model.d; ++b) xi0(b) = u(rng);
    sup = std::max(sup, std::abs(field_eval(f, CMat(g * exp_group(model, xi0)))));
  }
  rep.sup_sampled = sup;
  // sup |phi| over the coordinate ball of radius one around g, in op terms.
  TailEnvelope tenv{env->bound(g_norm * std::exp(detail::basis_opnorm_sum(model))), 1.0};
  MajorantValue mv = majorant_eval(m, 1.0, tenv);
  if (mv.tail_kind == "unavailable") mv = majorant_eval(m, 1.0);
  rep.rhs_reverse = mv.value + (std::isfinite(mv.tail) ? mv.tail : 0.0);
  rep.tail_kind = mv.tail_kind;
  rep.reverse_pass = rep.sup_sampled <= rep.rhs_reverse * (1.0 + 1e-9);
  return rep;
}

}  // namespace lietaylor
