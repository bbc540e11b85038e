#pragma once

// Iterated left-invariant derivatives for arbitrary fields: exact oracle
// dispatch, nested Cauchy quadrature on circles, nested central differences
// with Richardson extrapolation, dense Taylor data assembly, and a heuristic
// convergence-radius probe.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lietaylor/field.hpp"
#include "lietaylor/parallel.hpp"

namespace lietaylor {

struct DerivMethod {
  enum class Kind { exact, cauchy_quadrature, finite_difference };
  Kind kind = Kind::exact;
  int nodes = 32;        // quadrature nodes per circle, power of two >= 8
  double radius = 0.5;   // quadrature circle radius
  double step = 0.1;     // finite-difference base step
  int levels = 4;        // Richardson levels
  int n_max = 8;         // refusal threshold on the order

  static DerivMethod exact() { return DerivMethod{}; }
  static DerivMethod quadrature(int m = 32, double rho = 0.5) {
    DerivMethod d;
    d.kind = Kind::cauchy_quadrature;
    d.nodes = m;
    d.radius = rho;
    return d;
  }
  static DerivMethod fd(double h = 0.1, int levels = 4) {
    DerivMethod d;
    d.kind = Kind::finite_difference;
    d.step = h;
    d.levels = levels;
    return d;
  }
  std::string name() const {
    switch (kind) {
      case Kind::exact: return "exact";
      case Kind::cauchy_quadrature: return "cauchy-quadrature";
      case Kind::finite_difference: return "finite-difference";
    }
    return "?";
  }
};

inline DerivMethod method_from_name(const std::string& s) {
  if (s == "exact") return DerivMethod::exact();
  if (s == "cauchy-quadrature" || s == "quadrature") return DerivMethod::quadrature();
  if (s == "finite-difference" || s == "fd") return DerivMethod::fd();
  throw config_error("unknown method '" + s + "' (exact, cauchy-quadrature, finite-difference)");
}

inline void validate_deriv_method(const DerivMethod& m) {
  if (m.kind == DerivMethod::Kind::cauchy_quadrature) {
    if (m.nodes < 8 || (m.nodes & (m.nodes - 1)) != 0)
      throw config_error("quadrature node count must be a power of two >= 8");
    if (!(m.radius > 0)) throw config_error("quadrature radius must be positive");
  }
  if (m.kind == DerivMethod::Kind::finite_difference && !(m.step > 0))
    throw config_error("finite-difference step must be positive");
}

namespace detail {

// Linear-combination view of a field: succeeds when the expression is a sum
// of scaled rep atoms plus a constant (no products, black boxes, pullbacks).
struct LinearAtoms {
  std::vector<std::pair<cd, const RepAtom*>> atoms;
  cd constant{0.0, 0.0};
  bool ok = true;
};

inline void collect_linear_atoms(const FieldExpr& e, cd mul, LinearAtoms& out) {
  using K = FieldExpr::Kind;
  if (!out.ok) return;
  switch (e.kind) {
    case K::rep: out.atoms.push_back({mul, &e.atom}); return;
    case K::constant: out.constant += mul * e.value; return;
    case K::sum:
      collect_linear_atoms(*e.a, mul, out);
      collect_linear_atoms(*e.b, mul, out);
      return;
    case K::scale: collect_linear_atoms(*e.a, mul * e.value, out); return;
    default: out.ok = false; return;
  }
}

inline LinearAtoms linear_atoms_of(const FieldExpr& root) {
  LinearAtoms out;
  collect_linear_atoms(root, cd(1, 0), out);
  if (!out.ok) {
    out.atoms.clear();
    out.constant = cd(0, 0);
  }
  return out;
}

// Nested-contour quadrature over a fixed list of direction matrices,
// evaluating the field on group-space products (generic path).
struct QuadPlan {
  int M = 32;
  double rho = 0.5;
  std::vector<cd> weight;               // e^{-i theta_j}
  std::vector<std::vector<CMat>> exps;  // [level][j] = exp(rho e^{i theta_j} dir_level)
};

inline QuadPlan make_quad_plan(const std::vector<CMat>& dirs, int M, double rho) {
  QuadPlan p;
  p.M = M;
  p.rho = rho;
  p.weight.resize(size_t(M));
  for (int j = 0; j < M; ++j) p.weight[size_t(j)] = std::exp(cd(0, -kTwoPi * j / M));
  p.exps.resize(dirs.size());
  for (size_t l = 0; l < dirs.size(); ++l) {
    p.exps[l].reserve(size_t(M));
    for (int j = 0; j < M; ++j)
      p.exps[l].push_back(expm(CMat(rho * std::exp(cd(0, kTwoPi * j / M)) * dirs[l])));
  }
  return p;
}

inline cd quad_walk_group(const std::function<cd(const CMat&)>& f, const QuadPlan& p,
                          const CMat& prefix, size_t level) {
  if (level == p.exps.size()) return f(prefix);
  KahanSumC acc;
  for (int j = 0; j < p.M; ++j)
    acc.add(p.weight[size_t(j)] * quad_walk_group(f, p, CMat(prefix * p.exps[level][size_t(j)]), level + 1));
  return acc.value();
}

// Fast path for one rep atom: carry the covector through tabulated rho images
// of the circle exponentials (rho is multiplicative, so the group-space
// product never has to be formed).
inline cd quad_walk_atom(const RepAtom& atom, const QuadPlan& p,
                         const std::vector<std::vector<CMat>>& rho_tab, const CRowVec& row,
                         size_t level) {
  if (level == rho_tab.size()) return (row * atom.v)(0, 0);
  KahanSumC acc;
  for (int j = 0; j < p.M; ++j)
    acc.add(p.weight[size_t(j)] * quad_walk_atom(atom, p, rho_tab, CRowVec(row * rho_tab[level][size_t(j)]), level + 1));
  return acc.value();
}

inline cd quadrature_derivative_dirs(const Field& f, const GroupModel& model, const CMat& g,
                                     const std::vector<CMat>& dirs, int M, double rho) {
  size_t n = dirs.size();
  if (n == 0) return field_eval(f, g);
  QuadPlan plan = make_quad_plan(dirs, M, rho);
  double scale = std::pow(double(M) * rho, double(n));
  LinearAtoms lin = linear_atoms_of(*f.root);
  if (lin.ok) {
    KahanSumC total;
    for (const auto& [coeff, atom] : lin.atoms) {
      std::vector<std::vector<CMat>> rho_tab(n);
      for (size_t l = 0; l < n; ++l) {
        rho_tab[l].reserve(size_t(M));
        for (int j = 0; j < M; ++j) rho_tab[l].push_back(atom->rho(plan.exps[l][size_t(j)]));
      }
      CRowVec row = atom->phi * atom->rho(g);
      total.add(coeff * quad_walk_atom(*atom, plan, rho_tab, row, 0));
    }
    return total.value() / scale;
  }
  auto eval = [&](const CMat& x) { return field_eval(f, x); };
  (void)model;
  return quad_walk_group(eval, plan, g, 0) / scale;
}

// Nested central difference of the flow map at one step size.
inline cd nested_central_difference(const Field& f, const CMat& g, const std::vector<CMat>& dirs,
                                    double h) {
  size_t n = dirs.size();
  std::vector<CMat> plus(n), minus(n);
  for (size_t i = 0; i < n; ++i) {
    plus[i] = expm(CMat(h * dirs[i]));
    minus[i] = expm(CMat(-h * dirs[i]));
  }
  KahanSumC acc;
  std::function<void(size_t, const CMat&, double)> walk = [&](size_t level, const CMat& prefix,
                                                              double sign) {
    if (level == n) {
      acc.add(sign * field_eval(f, prefix));
      return;
    }
    walk(level + 1, CMat(prefix * plus[level]), sign);
    walk(level + 1, CMat(prefix * minus[level]), -sign);
  };
  walk(0, g, 1.0);
  return acc.value() / std::pow(2.0 * h, double(n));
}

inline cd fd_derivative_dirs(const Field& f, const CMat& g, const std::vector<CMat>& dirs,
                             double h0, int levels, double* err_out = nullptr) {
  size_t n = dirs.size();
  if (n == 0) {
    if (err_out) *err_out = 0;
    return field_eval(f, g);
  }
  std::vector<cd> table(static_cast<size_t>(levels));
  for (int l = 0; l < levels; ++l)
    table[size_t(l)] = nested_central_difference(f, g, dirs, h0 / std::pow(2.0, l));
  // Richardson in h^2.
  std::vector<cd> prev = table, cur(static_cast<size_t>(levels));
  cd last = table[size_t(levels - 1)];
  cd before_last = table[size_t(levels - 1)];
  for (int m = 1; m < levels; ++m) {
    double fac = std::pow(4.0, m);
    for (int l = m; l < levels; ++l)
      cur[size_t(l)] = (fac * prev[size_t(l)] - prev[size_t(l - 1)]) / (fac - 1.0);
    before_last = prev[size_t(levels - 1)];
    prev = cur;
    last = prev[size_t(levels - 1)];
  }
  if (err_out) *err_out = std::abs(last - before_last);
  return last;
}

inline std::vector<CMat> direction_matrices(const GroupModel& model, const MultiIndex& alpha) {
  std::vector<CMat> dirs;
  dirs.reserve(alpha.size());
  for (int a : alpha) {
    if (a < 1 || a > model.d)
      throw std::invalid_argument("multi-index entry out of range 1.." + std::to_string(model.d));
    dirs.push_back(model.basis[size_t(a - 1)]);
  }
  return dirs;
}

}  // namespace detail

// L(xi_1 ... xi_n) phi (g) for arbitrary coordinate directions (complex
// coefficients allowed), via the exact oracle.
inline cd exact_lie_derivative_dirs(const FieldExpr& e, const GroupModel& model, const CMat& g,
                                    const std::vector<CVecX>& dirs) {
  using K = FieldExpr::Kind;
  size_t n = dirs.size();
  switch (e.kind) {
    case K::rep: {
      CRowVec row = e.atom.phi * e.atom.rho(g);
      for (size_t i = 0; i < n; ++i) {
        CMat dm = CMat::Zero(e.atom.rep_dim, e.atom.rep_dim);
        for (int b = 0; b < model.d; ++b) dm += dirs[i](b) * e.atom.drho[size_t(b)];
        row = row * dm;
      }
      return (row * e.atom.v)(0, 0);
    }
    case K::constant: return n == 0 ? e.value : cd(0, 0);
    case K::blackbox: throw refusal_error("black-box field has no exact derivative oracle");
    case K::sum:
      return exact_lie_derivative_dirs(*e.a, model, g, dirs) +
             exact_lie_derivative_dirs(*e.b, model, g, dirs);
    case K::scale: return e.value * exact_lie_derivative_dirs(*e.a, model, g, dirs);
    case K::product: {
      if (n > 24) throw refusal_error("product rule expansion beyond order 24");
      KahanSumC acc;
      std::uint64_t full = (n == 0) ? 1u : (1ull << n);
      std::vector<CVecX> left, right;
      for (std::uint64_t mask = 0; mask < full; ++mask) {
        left.clear();
        right.clear();
        for (size_t i = 0; i < n; ++i)
          ((mask >> i) & 1u ? left : right).push_back(dirs[i]);
        acc.add(exact_lie_derivative_dirs(*e.a, model, g, left) *
                exact_lie_derivative_dirs(*e.b, model, g, right));
      }
      return acc.value();
    }
    case K::pullback: {
      const GroupModel& tgt = registry_get(e.mor.target);
      std::vector<CVecX> pushed;
      pushed.reserve(n);
      for (const CVecX& v : dirs) {
        CVecX w = CVecX::Zero(tgt.d);
        for (int rr = 0; rr < tgt.d; ++rr)
          for (int cc = 0; cc < model.d; ++cc) w(rr) += e.mor.tangent_map(rr, cc) * v(cc);
        pushed.push_back(w);
      }
      return exact_lie_derivative_dirs(*e.a, tgt, e.mor.element_map(g), pushed);
    }
  }
  throw config_error("corrupt field expression");
}

inline cd exact_lie_derivative_dirs(const Field& f, const GroupModel& model, const CMat& g,
                                    const std::vector<CVecX>& dirs) {
  return exact_lie_derivative_dirs(*f.root, model, g, dirs);
}

inline cd lie_derivative(const Field& f, const GroupModel& model, const CMat& g,
                         const MultiIndex& alpha, const DerivMethod& method) {
  validate_deriv_method(method);
  int n = int(alpha.size());
  switch (method.kind) {
    case DerivMethod::Kind::exact:
      if (!field_has_exact(f))
        throw refusal_error("unsupported-method: exact oracle unavailable for field '" + f.name + "'");
      return exact_lie_derivative(f, model, g, alpha);
    case DerivMethod::Kind::cauchy_quadrature: {
      if (!model.is_complex)
        throw refusal_error("unsupported-method: cauchy-quadrature needs a complex group, got " + model.name);
      if (field_regularity(f) != Regularity::holomorphic)
        throw refusal_error("unsupported-method: cauchy-quadrature needs a holomorphic field, got regularity " +
                            regularity_name(field_regularity(f)));
      if (n > method.n_max) {
        double cost = std::pow(double(method.nodes), double(n));
        throw refusal_error("order " + std::to_string(n) + " exceeds N_max " + std::to_string(method.n_max) +
                            "; would need about " + format_double(cost) + " field evaluations");
      }
      return detail::quadrature_derivative_dirs(f, model, g, detail::direction_matrices(model, alpha),
                                                method.nodes, method.radius);
    }
    case DerivMethod::Kind::finite_difference: {
      if (n > 3)
        throw refusal_error("finite differences limited to order 3, requested " + std::to_string(n));
      return detail::fd_derivative_dirs(f, g, detail::direction_matrices(model, alpha), method.step,
                                        method.levels);
    }
  }
  throw config_error("corrupt method");
}

// ---- Taylor data ------------------------------------------------------------

// Dense per-order array of L(alpha) phi (g) over the group's basis directions,
// lexicographic within each order.
struct TaylorData {
  std::string group;
  std::string field;
  CMat center;
  int d = 0;
  int order = 0;
  std::string method;
  std::vector<std::vector<cd>> coeff;    // coeff[n][rank]
  std::vector<double> order_error;       // estimated per-coefficient error, per order

  const cd& at(const MultiIndex& alpha) const {
    return coeff[alpha.size()][size_t(multiindex_rank(alpha, d))];
  }
  cd value() const { return coeff[0][0]; }
};

namespace detail {

// Shared-prefix walk over the whole word tree for linear combinations of rep
// atoms: one covector per atom, extended one direction at a time.
inline void taylor_exact_linear(const LinearAtoms& lin, const GroupModel& model, const CMat& g,
                                int N, TaylorData& out) {
  size_t na = lin.atoms.size();
  std::vector<std::vector<CRowVec>> stack(size_t(N) + 1, std::vector<CRowVec>(na));
  for (size_t a = 0; a < na; ++a)
    stack[0][a] = lin.atoms[a].second->phi * lin.atoms[a].second->rho(g);
  std::function<void(int, std::int64_t)> walk = [&](int depth, std::int64_t rank) {
    KahanSumC val;
    for (size_t a = 0; a < na; ++a)
      val.add(lin.atoms[a].first * (stack[size_t(depth)][a] * lin.atoms[a].second->v)(0, 0));
    if (depth == 0) val.add(lin.constant);
    out.coeff[size_t(depth)][size_t(rank)] = val.value();
    if (depth == N) return;
    for (int k = 0; k < model.d; ++k) {
      for (size_t a = 0; a < na; ++a)
        stack[size_t(depth) + 1][a] = stack[size_t(depth)][a] * lin.atoms[a].second->drho[size_t(k)];
      walk(depth + 1, rank * model.d + k);
    }
  };
  walk(0, 0);
}

}  // namespace detail

inline std::vector<cd> taylor1d_stream(const Field& f, const GroupModel& model, const CMat& g,
                                       const RVec& xi, int K, double rho = 0.5, int M = 0);

inline TaylorData taylor_data(const Field& f, const GroupModel& model, const CMat& g, int N,
                              const DerivMethod& method) {
  validate_deriv_method(method);
  if (N < 0) throw config_error("taylor_data: order must be >= 0");
  TaylorData out;
  out.group = model.name;
  out.field = f.name;
  out.center = g;
  out.d = model.d;
  out.order = N;
  out.method = method.name();
  out.coeff.resize(size_t(N) + 1);
  for (int n = 0; n <= N; ++n) out.coeff[size_t(n)].resize(size_t(pow_i64(model.d, n)));
  out.order_error.assign(size_t(N) + 1, 0.0);

  if (method.kind == DerivMethod::Kind::exact) {
    if (!field_has_exact(f))
      throw refusal_error("unsupported-method: exact oracle unavailable for field '" + f.name + "'");
    detail::LinearAtoms lin = detail::linear_atoms_of(*f.root);
    if (lin.ok) {
      detail::taylor_exact_linear(lin, model, g, N, out);
    } else {
      MultiIndex alpha;
      for (int n = 0; n <= N; ++n) {
        std::int64_t total = pow_i64(model.d, n);
        for (std::int64_t r = 0; r < total; ++r) {
          alpha = multiindex_unrank(r, n, model.d);
          out.coeff[size_t(n)][size_t(r)] = exact_lie_derivative(f, model, g, alpha);
        }
      }
    }
    for (int n = 0; n <= N; ++n) {
      double mx = 0;
      for (const cd& c : out.coeff[size_t(n)]) mx = std::max(mx, std::abs(c));
      out.order_error[size_t(n)] = 1e-15 * (1.0 + mx) * (1.0 + n);
    }
    return out;
  }

  // One-dimensional groups: a single contour in the flow parameter replaces
  // the nested product quadrature, so deep orders stay affordable.
  if (model.d == 1 && method.kind == DerivMethod::Kind::cauchy_quadrature &&
      (field_has_exact(f) || field_formula_holomorphic(f))) {
    RVec xi(1);
    xi(0) = 1.0;
    std::vector<cd> a =
        taylor1d_stream(f, model, g, xi, N, method.radius, std::max(method.nodes, 4 * N + 4));
    double fac = 1.0;
    for (int n = 0; n <= N; ++n) {
      if (n > 0) fac *= double(n);
      // keep exact zeros clean once the factorial overflows to inf
      cd t = a[size_t(n)] == cd(0, 0) ? cd(0, 0) : a[size_t(n)] * fac;
      out.coeff[size_t(n)][0] = t;
      out.order_error[size_t(n)] = 1e-12 * (1.0 + std::abs(t));
    }
    return out;
  }

  if (method.kind == DerivMethod::Kind::cauchy_quadrature && N > method.n_max) {
    double cost = std::pow(double(method.nodes), double(N));
    throw refusal_error("order " + std::to_string(N) + " exceeds N_max " + std::to_string(method.n_max) +
                        "; top order alone would need about " + format_double(cost) + " field evaluations");
  }
  if (method.kind == DerivMethod::Kind::finite_difference && N > 3)
    throw refusal_error("finite differences limited to order 3, requested " + std::to_string(N));

  for (int n = 0; n <= N; ++n) {
    std::int64_t total = pow_i64(model.d, n);
    std::vector<double> errs(size_t(total), 0.0);
    parallel_for(total, [&](std::int64_t r) {
      MultiIndex alpha = multiindex_unrank(r, n, model.d);
      if (method.kind == DerivMethod::Kind::cauchy_quadrature) {
        out.coeff[size_t(n)][size_t(r)] = detail::quadrature_derivative_dirs(
            f, model, g, detail::direction_matrices(model, alpha), method.nodes, method.radius);
      } else {
        double e = 0;
        out.coeff[size_t(n)][size_t(r)] = detail::fd_derivative_dirs(
            f, g, detail::direction_matrices(model, alpha), method.step, method.levels, &e);
        errs[size_t(r)] = e;
      }
    });
    double mx = 0, me = 0;
    for (const cd& c : out.coeff[size_t(n)]) mx = std::max(mx, std::abs(c));
    for (double e : errs) me = std::max(me, e);
    out.order_error[size_t(n)] = method.kind == DerivMethod::Kind::cauchy_quadrature
                                     ? 1e-9 * (1.0 + mx)
                                     : std::max(me, 1e-12 * (1.0 + mx));
  }
  return out;
}

// Picks the strongest supported method for the field/group combination.
inline DerivMethod preferred_method(const Field& f, const GroupModel& model) {
  (void)model;
  if (field_has_exact(f)) return DerivMethod::exact();
  if (field_formula_holomorphic(f)) return DerivMethod::quadrature();
  return DerivMethod::fd();
}

// ---- radius probe ------------------------------------------------------------

struct RadiusEstimate {
  double radius = std::numeric_limits<double>::infinity();
  bool infinite = true;
  bool heuristic = true;  // always: Cauchy-Hadamard on a finite window
  double est_late = 0;    // max |a_k|^(1/k) over the last third
  double est_mid = 0;     // same over the middle third
  std::vector<cd> stream; // a_k = L_xi^k phi / k!
};

// One-dimensional stream a_k along direction xi: exact powers when available,
// else a single Cauchy contour in the flow parameter for holomorphic formulas.
inline std::vector<cd> taylor1d_stream(const Field& f, const GroupModel& model, const CMat& g,
                                       const RVec& xi, int K, double rho, int M) {
  std::vector<cd> a(size_t(K) + 1);
  if (field_has_exact(f)) {
    CVecX dir(model.d);
    for (int b = 0; b < model.d; ++b) dir(b) = cd(xi(b), 0);
    std::vector<CVecX> dirs;
    for (int k = 0; k <= K; ++k) {
      a[size_t(k)] = exact_lie_derivative_dirs(f, model, g, dirs) / factorial(k);
      dirs.push_back(dir);
    }
    return a;
  }
  if (field_regularity(f) == Regularity::smooth_only || !field_formula_holomorphic_expr(*f.root))
    throw refusal_error("coefficient stream to order " + std::to_string(K) +
                        " needs an exact oracle or a holomorphic evaluation formula");
  if (M == 0) M = std::max(128, 4 * K);
  CMat xim = model.algebra_element(xi);
  std::vector<cd> fx(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    cd z = rho * std::exp(cd(0, kTwoPi * j / M));
    fx[size_t(j)] = field_eval(f, CMat(g * expm(CMat(z * xim))));
  }
  for (int k = 0; k <= K; ++k) {
    KahanSumC acc;
    for (int j = 0; j < M; ++j) acc.add(fx[size_t(j)] * std::exp(cd(0, -kTwoPi * k * j / M)));
    a[size_t(k)] = acc.value() / (double(M) * std::pow(rho, k));
  }
  return a;
}

inline RadiusEstimate radius_estimate(const Field& f, const GroupModel& model, const CMat& g,
                                      const RVec& xi, int K = 30) {
  if (K < 6) throw config_error("radius_estimate: probe order must be >= 6");
  RadiusEstimate out;
  out.stream = taylor1d_stream(f, model, g, xi, K);
  int lo_mid = K / 3, lo_late = (2 * K) / 3;
  double mid = 0, late = 0, late_abs = 0;
  for (int k = lo_mid + 1; k <= lo_late; ++k)
    mid = std::max(mid, std::pow(std::abs(out.stream[size_t(k)]), 1.0 / k));
  for (int k = lo_late + 1; k <= K; ++k) {
    late = std::max(late, std::pow(std::abs(out.stream[size_t(k)]), 1.0 / k));
    late_abs = std::max(late_abs, std::abs(out.stream[size_t(k)]));
  }
  out.est_mid = mid;
  out.est_late = late;
  // Underflowing coefficients, or a root sequence still falling off by the
  // end of the window, indicate superexponential decay: report +infinity.
  if (late_abs < 1e-270 || late <= 0 || late < 0.75 * mid) {
    out.infinite = true;
    out.radius = std::numeric_limits<double>::infinity();
    return out;
  }
  out.infinite = false;
  out.radius = 1.0 / late;
  return out;
}

}  // namespace lietaylor
