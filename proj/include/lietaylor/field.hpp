#pragma once

// Scalar fields on a group model. A field is an expression tree whose leaves
// are either representative atoms (matrix coefficients phi . rho(g) . v with
// an exact derivative oracle) or black-box evaluators, combined by sums,
// scalar multiples, products, and pullbacks along group morphisms.

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lietaylor/group.hpp"

namespace lietaylor {

enum class Regularity { smooth_only = 0, real_analytic = 1, holomorphic = 2 };

inline std::string regularity_name(Regularity r) {
  switch (r) {
    case Regularity::holomorphic: return "holomorphic";
    case Regularity::real_analytic: return "real-analytic";
    case Regularity::smooth_only: return "smooth-only";
  }
  return "?";
}

inline Regularity regularity_from_name(const std::string& s) {
  if (s == "holomorphic") return Regularity::holomorphic;
  if (s == "real-analytic") return Regularity::real_analytic;
  if (s == "smooth-only") return Regularity::smooth_only;
  throw config_error("unknown regularity '" + s + "'");
}

enum class RhoKind { standard, adjoint, power };

// Matrix-coefficient leaf: phi . rho(g) . v with rho multiplicative and
// drho[k] its derivative along group basis direction k+1.
struct RepAtom {
  RhoKind rho_kind = RhoKind::standard;
  int rep_dim = 1;
  int power = 1;  // power kind only
  std::function<CMat(const CMat&)> rho;
  std::vector<CMat> drho;
  std::vector<CMat> rep_basis;      // adjoint kind only
  Eigen::MatrixXcd rep_pinv;        // adjoint kind only
  CVec v;
  CRowVec phi;

  cd eval(const CMat& g) const { return (phi * rho(g) * v)(0, 0); }
};

struct BlackBox {
  std::function<cd(const CMat&)> evaluator;
  Regularity regularity = Regularity::smooth_only;
  // True when the defining formula is holomorphic in the matrix entries, so
  // complex chart points and complexified elements may be fed to it.
  bool formula_holomorphic = false;
};

struct FieldExpr;
using FieldPtr = std::shared_ptr<const FieldExpr>;

struct MorphismNode {
  std::string tag;  // "inclusion" or "cover"; drives complexification
  std::string source, target;
  std::function<CMat(const CMat&)> element_map;
  RMat tangent_map;  // d_target x d_source
};

struct FieldExpr {
  enum class Kind { rep, blackbox, constant, sum, product, scale, pullback };
  Kind kind = Kind::constant;
  RepAtom atom;
  BlackBox bb;
  cd value{0.0, 0.0};  // constant value or scale coefficient
  FieldPtr a, b;
  MorphismNode mor;  // pullback: a is a field on mor.target
};

struct Field {
  std::string name;
  std::string group;
  FieldPtr root;
};

namespace detail {

inline FieldPtr node_const(cd c) {
  auto e = std::make_shared<FieldExpr>();
  e->kind = FieldExpr::Kind::constant;
  e->value = c;
  return e;
}

inline FieldPtr node_rep(RepAtom atom) {
  auto e = std::make_shared<FieldExpr>();
  e->kind = FieldExpr::Kind::rep;
  e->atom = std::move(atom);
  return e;
}

inline FieldPtr node_bb(BlackBox bb) {
  auto e = std::make_shared<FieldExpr>();
  e->kind = FieldExpr::Kind::blackbox;
  e->bb = std::move(bb);
  return e;
}

inline FieldPtr node_sum(FieldPtr a, FieldPtr b) {
  auto e = std::make_shared<FieldExpr>();
  e->kind = FieldExpr::Kind::sum;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

inline FieldPtr node_product(FieldPtr a, FieldPtr b) {
  auto e = std::make_shared<FieldExpr>();
  e->kind = FieldExpr::Kind::product;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

inline FieldPtr node_scale(cd c, FieldPtr a) {
  auto e = std::make_shared<FieldExpr>();
  e->kind = FieldExpr::Kind::scale;
  e->value = c;
  e->a = std::move(a);
  return e;
}

inline FieldPtr node_pullback(MorphismNode mor, FieldPtr inner) {
  auto e = std::make_shared<FieldExpr>();
  e->kind = FieldExpr::Kind::pullback;
  e->mor = std::move(mor);
  e->a = std::move(inner);
  return e;
}

inline Eigen::VectorXcd vec_of(const CMat& x) {
  Eigen::VectorXcd v(x.rows() * x.cols());
  int k = 0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j, ++k) v(k) = x(i, j);
  return v;
}

}  // namespace detail

// ---- evaluation -----------------------------------------------------------

inline cd field_eval_expr(const FieldExpr& e, const CMat& g) {
  using K = FieldExpr::Kind;
  switch (e.kind) {
    case K::rep: return e.atom.eval(g);
    case K::blackbox: return e.bb.evaluator(g);
    case K::constant: return e.value;
    case K::sum: return field_eval_expr(*e.a, g) + field_eval_expr(*e.b, g);
    case K::product: return field_eval_expr(*e.a, g) * field_eval_expr(*e.b, g);
    case K::scale: return e.value * field_eval_expr(*e.a, g);
    case K::pullback: return field_eval_expr(*e.a, e.mor.element_map(g));
  }
  throw config_error("corrupt field expression");
}

inline cd field_eval(const Field& f, const CMat& g) { return field_eval_expr(*f.root, g); }

// Evaluation with a membership gate on the argument.
inline cd field_eval_checked(const Field& f, const GroupModel& model, const CMat& g) {
  std::string why;
  if (!model.member(g, &why))
    throw std::domain_error("eval: argument is not in " + model.name + ": " + why);
  return field_eval_expr(*f.root, g);
}

inline Regularity field_regularity_expr(const FieldExpr& e) {
  using K = FieldExpr::Kind;
  switch (e.kind) {
    case K::rep:
    case K::constant: return Regularity::holomorphic;
    case K::blackbox: return e.bb.regularity;
    case K::sum:
    case K::product:
      return std::min(field_regularity_expr(*e.a), field_regularity_expr(*e.b));
    case K::scale:
    case K::pullback: return field_regularity_expr(*e.a);
  }
  return Regularity::smooth_only;
}

inline Regularity field_regularity(const Field& f) { return field_regularity_expr(*f.root); }

inline bool field_has_exact_expr(const FieldExpr& e) {
  using K = FieldExpr::Kind;
  switch (e.kind) {
    case K::rep:
    case K::constant: return true;
    case K::blackbox: return false;
    case K::sum:
    case K::product: return field_has_exact_expr(*e.a) && field_has_exact_expr(*e.b);
    case K::scale:
    case K::pullback: return field_has_exact_expr(*e.a);
  }
  return false;
}

inline bool field_has_exact(const Field& f) { return field_has_exact_expr(*f.root); }

// True when every black-box leaf may be fed complexified or complex-chart
// elements (its formula is holomorphic in the entries).
inline bool field_formula_holomorphic_expr(const FieldExpr& e) {
  using K = FieldExpr::Kind;
  switch (e.kind) {
    case K::rep:
    case K::constant: return true;
    case K::blackbox: return e.bb.formula_holomorphic;
    case K::sum:
    case K::product:
      return field_formula_holomorphic_expr(*e.a) && field_formula_holomorphic_expr(*e.b);
    case K::scale:
    case K::pullback: return field_formula_holomorphic_expr(*e.a);
  }
  return false;
}

inline bool field_formula_holomorphic(const Field& f) {
  return field_formula_holomorphic_expr(*f.root);
}

// ---- exact iterated derivatives --------------------------------------------

// L(alpha) phi (g) for alpha = (a_1..a_n): the last entry acts first, so a rep
// atom contributes phi . rho(g) . drho[a_1] ... drho[a_n] . v.
inline cd exact_lie_derivative_expr(const FieldExpr& e, const CMat& g, const MultiIndex& alpha) {
  using K = FieldExpr::Kind;
  int n = int(alpha.size());
  switch (e.kind) {
    case K::rep: {
      CRowVec row = e.atom.phi * e.atom.rho(g);
      for (int i = 0; i < n; ++i) row = row * e.atom.drho[size_t(alpha[size_t(i)] - 1)];
      return (row * e.atom.v)(0, 0);
    }
    case K::constant:
      return n == 0 ? e.value : cd(0, 0);
    case K::blackbox:
      throw refusal_error("black-box field has no exact derivative oracle");
    case K::sum:
      return exact_lie_derivative_expr(*e.a, g, alpha) + exact_lie_derivative_expr(*e.b, g, alpha);
    case K::scale:
      return e.value * exact_lie_derivative_expr(*e.a, g, alpha);
    case K::product: {
      if (n > 24) throw refusal_error("product rule expansion beyond order 24");
      KahanSumC acc;
      std::uint64_t full = (n == 0) ? 1u : (1ull << n);
      MultiIndex left, right;
      for (std::uint64_t mask = 0; mask < full; ++mask) {
        left.clear();
        right.clear();
        for (int i = 0; i < n; ++i)
          ((mask >> i) & 1u ? left : right).push_back(alpha[size_t(i)]);
        acc.add(exact_lie_derivative_expr(*e.a, g, left) *
                exact_lie_derivative_expr(*e.b, g, right));
      }
      return acc.value();
    }
    case K::pullback: {
      // Push each source direction through the tangent map and expand over
      // the nonzero entries of the corresponding columns.
      const RMat& t = e.mor.tangent_map;
      CMat h = e.mor.element_map(g);
      std::vector<std::vector<std::pair<int, double>>> cols(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        int src = alpha[size_t(i)] - 1;
        for (int row = 0; row < t.rows(); ++row)
          if (t(row, src) != 0.0) cols[size_t(i)].push_back({row + 1, t(row, src)});
      }
      MultiIndex beta(static_cast<size_t>(n));
      KahanSumC acc;
      std::function<void(int, double)> walk = [&](int pos, double w) {
        if (pos == n) {
          acc.add(w * exact_lie_derivative_expr(*e.a, h, beta));
          return;
        }
        for (const auto& [row, coeff] : cols[size_t(pos)]) {
          beta[size_t(pos)] = row;
          walk(pos + 1, w * coeff);
        }
      };
      walk(0, 1.0);
      return acc.value();
    }
  }
  throw config_error("corrupt field expression");
}

inline cd exact_lie_derivative(const Field& f, const GroupModel& model, const CMat& g,
                               const MultiIndex& alpha) {
  for (int a : alpha)
    if (a < 1 || a > model.d)
      throw std::invalid_argument("multi-index entry out of range 1.." + std::to_string(model.d));
  return exact_lie_derivative_expr(*f.root, g, alpha);
}

// ---- builders --------------------------------------------------------------

inline RepAtom make_standard_atom(const GroupModel& g, const CVec& v, const CRowVec& phi) {
  RepAtom a;
  a.rho_kind = RhoKind::standard;
  a.rep_dim = g.m;
  a.rho = [](const CMat& x) { return x; };
  a.drho = g.basis;
  a.v = v;
  a.phi = phi;
  return a;
}

inline RepAtom make_power_atom(const GroupModel& g, int p) {
  if (g.m != 1) throw config_error("power fields need a 1x1 group realization");
  RepAtom a;
  a.rho_kind = RhoKind::power;
  a.rep_dim = 1;
  a.power = p;
  a.rho = [p](const CMat& x) {
    CMat r(1, 1);
    r(0, 0) = std::pow(x(0, 0), p);
    return r;
  };
  for (const CMat& b : g.basis) {
    CMat db(1, 1);
    db(0, 0) = double(p) * b(0, 0);
    a.drho.push_back(db);
  }
  a.v = CVec::Ones(1);
  a.phi = CRowVec::Ones(1);
  return a;
}

// Adjoint action in the given algebra basis (complex-linear extraction).
inline RepAtom make_adjoint_atom(const GroupModel& g, const std::vector<CMat>& rep_basis,
                                 const CVec& v, const CRowVec& phi) {
  RepAtom a;
  a.rho_kind = RhoKind::adjoint;
  int n = int(rep_basis.size());
  a.rep_dim = n;
  a.rep_basis = rep_basis;
  Eigen::MatrixXcd bmat(g.m * g.m, n);
  for (int j = 0; j < n; ++j) bmat.col(j) = detail::vec_of(rep_basis[size_t(j)]);
  a.rep_pinv = (bmat.adjoint() * bmat).ldlt().solve(Eigen::MatrixXcd(bmat.adjoint()));
  Eigen::MatrixXcd pinv = a.rep_pinv;
  std::vector<CMat> basis_copy = rep_basis;
  a.rho = [pinv, basis_copy, n](const CMat& x) {
    CMat xinv = x.inverse();
    CMat r(n, n);
    for (int j = 0; j < n; ++j) {
      CMat conj = x * basis_copy[size_t(j)] * xinv;
      Eigen::VectorXcd c = pinv * detail::vec_of(conj);
      for (int i = 0; i < n; ++i) r(i, j) = c(i);
    }
    return r;
  };
  for (const CMat& e : g.basis) {
    CMat d(n, n);
    for (int j = 0; j < n; ++j) {
      CMat br = e * rep_basis[size_t(j)] - rep_basis[size_t(j)] * e;
      Eigen::VectorXcd c = a.rep_pinv * detail::vec_of(br);
      for (int i = 0; i < n; ++i) d(i, j) = c(i);
    }
    a.drho.push_back(d);
  }
  a.v = v;
  a.phi = phi;
  return a;
}

inline std::vector<CMat> adjoint_rep_basis(const GroupModel& g) {
  if (g.is_complex)
    return std::vector<CMat>(g.basis.begin(), g.basis.begin() + g.d / 2);
  return g.basis;
}

inline CVec unit_cvec(int n, int i) {
  CVec v = CVec::Zero(n);
  v(i) = cd(1, 0);
  return v;
}

inline CRowVec unit_crow(int n, int i) {
  CRowVec v = CRowVec::Zero(n);
  v(i) = cd(1, 0);
  return v;
}

// g -> g_ij (1-based indices).
inline Field make_entry_field(const GroupModel& g, int i = 1, int j = 1) {
  if (i < 1 || i > g.m || j < 1 || j > g.m) throw config_error("entry index out of range");
  Field f;
  f.name = "entry" + std::to_string(i) + std::to_string(j);
  f.group = g.name;
  f.root = detail::node_rep(make_standard_atom(g, unit_cvec(g.m, j - 1), unit_crow(g.m, i - 1)));
  return f;
}

inline Field make_trace_field(const GroupModel& g) {
  Field f;
  f.name = "trace";
  f.group = g.name;
  FieldPtr acc;
  for (int i = 0; i < g.m; ++i) {
    FieldPtr term = detail::node_rep(make_standard_atom(g, unit_cvec(g.m, i), unit_crow(g.m, i)));
    acc = acc ? detail::node_sum(acc, term) : term;
  }
  f.root = acc;
  return f;
}

// Matrix coefficient of the adjoint action, (Ad g)_ij in the pinned algebra
// basis (first half of an (e, ie) basis for complex groups).
inline Field make_adjoint_entry_field(const GroupModel& g, int i = 1, int j = 1) {
  std::vector<CMat> rep = adjoint_rep_basis(g);
  int n = int(rep.size());
  if (i < 1 || i > n || j < 1 || j > n) throw config_error("adjoint entry index out of range");
  Field f;
  f.name = "adjoint" + std::to_string(i) + std::to_string(j);
  f.group = g.name;
  f.root = detail::node_rep(make_adjoint_atom(g, rep, unit_cvec(n, j - 1), unit_crow(n, i - 1)));
  return f;
}

// z -> z^p on a 1x1 realization (characters of the circle and of C^x).
inline Field make_char_field(const GroupModel& g, int p) {
  Field f;
  f.name = "char" + std::to_string(p);
  f.group = g.name;
  f.root = detail::node_rep(make_power_atom(g, p));
  return f;
}

inline Field make_const_field(const GroupModel& g, cd c) {
  Field f;
  f.name = "const";
  f.group = g.name;
  f.root = detail::node_const(c);
  return f;
}

// g -> g_11 * g_22, a product node exercising the Leibniz path.
inline Field make_entry_product_field(const GroupModel& g) {
  if (g.m < 2) throw config_error("entry product needs ambient size >= 2");
  Field f;
  f.name = "product1122";
  f.group = g.name;
  f.root = detail::node_product(make_entry_field(g, 1, 1).root, make_entry_field(g, 2, 2).root);
  return f;
}

// Laurent polynomial sum c_n z^n over given (n, c_n) terms.
inline Field make_laurent_poly_field(const GroupModel& g,
                                     const std::vector<std::pair<int, cd>>& terms) {
  Field f;
  f.name = "laurentpoly";
  f.group = g.name;
  FieldPtr acc;
  for (const auto& [n, c] : terms) {
    FieldPtr term = (n == 0) ? detail::node_const(c)
                             : detail::node_scale(c, detail::node_rep(make_power_atom(g, n)));
    acc = acc ? detail::node_sum(acc, term) : term;
  }
  if (!acc) acc = detail::node_const(cd(0, 0));
  f.root = acc;
  return f;
}

// 2 z^-1 + 3 + z^2.
inline Field make_trig_poly_field(const GroupModel& g) {
  Field f = make_laurent_poly_field(g, {{-1, cd(2, 0)}, {0, cd(3, 0)}, {2, cd(1, 0)}});
  f.name = "trigpoly";
  return f;
}

// Black boxes ----------------------------------------------------------------

inline Field make_re_entry_field(const GroupModel& g) {
  Field f;
  f.name = "re11";
  f.group = g.name;
  BlackBox bb;
  bb.evaluator = [](const CMat& x) { return cd(x(0, 0).real(), 0.0); };
  bb.regularity = Regularity::real_analytic;
  bb.formula_holomorphic = false;
  f.root = detail::node_bb(bb);
  return f;
}

inline Field make_exp_trace_field(const GroupModel& g) {
  Field f;
  f.name = "exptrace";
  f.group = g.name;
  BlackBox bb;
  bb.evaluator = [](const CMat& x) { return std::exp(x.trace()); };
  bb.regularity = Regularity::holomorphic;
  bb.formula_holomorphic = true;
  f.root = detail::node_bb(bb);
  return f;
}

// 1/(1 + x^2) in the first translation coordinate of R^d or C^d.
inline Field make_rational_field(const GroupModel& g) {
  if (g.kind != MembershipKind::unipotent_real && g.kind != MembershipKind::unipotent_complex)
    throw config_error("rational field is defined on the translation groups");
  Field f;
  f.name = "rational";
  f.group = g.name;
  int m = g.m;
  BlackBox bb;
  bb.evaluator = [m](const CMat& x) {
    cd t = x(0, m - 1);
    return cd(1, 0) / (cd(1, 0) + t * t);
  };
  bb.regularity = Regularity::real_analytic;
  bb.formula_holomorphic = true;
  f.root = detail::node_bb(bb);
  return f;
}

// ---- pullback and complexification ------------------------------------------

// Fréchet-algebra combinators on named fields.
inline Field field_sum(const Field& a, const Field& b) {
  if (a.group != b.group) throw std::invalid_argument("field_sum: group mismatch");
  Field out;
  out.name = a.name + "+" + b.name;
  out.group = a.group;
  out.root = detail::node_sum(a.root, b.root);
  return out;
}

inline Field field_scale(cd c, const Field& a) {
  Field out;
  out.name = "scale(" + a.name + ")";
  out.group = a.group;
  out.root = detail::node_scale(c, a.root);
  return out;
}

inline Field field_product(const Field& a, const Field& b) {
  if (a.group != b.group) throw std::invalid_argument("field_product: group mismatch");
  Field out;
  out.name = a.name + "*" + b.name;
  out.group = a.group;
  out.root = detail::node_product(a.root, b.root);
  return out;
}

inline Field pullback_field(const Field& f, const GroupMorphism& mor, const std::string& tag) {
  if (f.group != mor.target)
    throw std::invalid_argument("pullback: field lives on " + f.group + ", morphism targets " +
                                mor.target);
  MorphismNode node;
  node.tag = tag;
  node.source = mor.source;
  node.target = mor.target;
  node.element_map = mor.element_map;
  node.tangent_map = mor.tangent_map;
  Field out;
  out.name = f.name + "@" + mor.source;
  out.group = mor.source;
  out.root = detail::node_pullback(node, f.root);
  return out;
}

namespace detail {

inline FieldPtr complexify_expr(const FieldExpr& e, const GroupModel& src, const GroupModel& tgt);

inline RepAtom complexify_atom(const RepAtom& atom, const GroupModel& tgt) {
  switch (atom.rho_kind) {
    case RhoKind::standard: {
      RepAtom a = atom;
      a.drho = tgt.basis;
      return a;
    }
    case RhoKind::power: {
      RepAtom a = atom;
      a.drho.clear();
      for (const CMat& b : tgt.basis) {
        CMat db(1, 1);
        db(0, 0) = double(atom.power) * b(0, 0);
        a.drho.push_back(db);
      }
      return a;
    }
    case RhoKind::adjoint: {
      RepAtom a = atom;
      a.drho.clear();
      int n = atom.rep_dim;
      for (const CMat& e2 : tgt.basis) {
        CMat d(n, n);
        for (int j = 0; j < n; ++j) {
          CMat br = e2 * atom.rep_basis[size_t(j)] - atom.rep_basis[size_t(j)] * e2;
          Eigen::VectorXcd c = atom.rep_pinv * vec_of(br);
          for (int i = 0; i < n; ++i) d(i, j) = c(i);
        }
        a.drho.push_back(d);
      }
      return a;
    }
  }
  throw config_error("corrupt atom");
}

inline MorphismNode complexify_morphism(const MorphismNode& mor) {
  const GroupModel& src_c = registry_get(registry_get(mor.source).complexification
                                             ? registry_get(mor.source).complexification->partner
                                             : mor.source);
  if (mor.tag == "cover") {
    // t -> e^{2 pi i t} extended to complex t: C^1 -> C^x.
    MorphismNode out;
    out.tag = "cover";
    out.source = "C1";
    out.target = "Ctimes";
    out.element_map = [](const CMat& x) {
      CMat r(1, 1);
      r(0, 0) = std::exp(cd(0, kTwoPi) * x(0, 1));
      return r;
    };
    out.tangent_map = RMat::Identity(2, 2);
    return out;
  }
  if (mor.tag == "inclusion") {
    MorphismNode out;
    out.tag = "inclusion";
    out.source = src_c.name;
    out.target = src_c.name;
    out.element_map = [](const CMat& x) { return x; };
    out.tangent_map = RMat::Identity(src_c.d, src_c.d);
    return out;
  }
  throw refusal_error("cannot complexify a field pulled back along morphism tag '" + mor.tag + "'");
}

inline FieldPtr complexify_expr(const FieldExpr& e, const GroupModel& src, const GroupModel& tgt) {
  using K = FieldExpr::Kind;
  switch (e.kind) {
    case K::rep:
      return node_rep(complexify_atom(e.atom, tgt));
    case K::constant:
      return node_const(e.value);
    case K::blackbox: {
      if (!e.bb.formula_holomorphic)
        throw refusal_error("black-box evaluator is not holomorphic in the entries; no counterpart field");
      return node_bb(e.bb);
    }
    case K::sum:
      return node_sum(complexify_expr(*e.a, src, tgt), complexify_expr(*e.b, src, tgt));
    case K::product:
      return node_product(complexify_expr(*e.a, src, tgt), complexify_expr(*e.b, src, tgt));
    case K::scale:
      return node_scale(e.value, complexify_expr(*e.a, src, tgt));
    case K::pullback: {
      MorphismNode cm = complexify_morphism(e.mor);
      const GroupModel& inner_src = registry_get(e.mor.target);
      const GroupModel& inner_tgt = registry_get(cm.target);
      FieldPtr inner = complexify_expr(*e.a, inner_src, inner_tgt);
      if (cm.tag == "inclusion") return inner;  // identity morphism
      return node_pullback(cm, inner);
    }
  }
  throw config_error("corrupt field expression");
}

}  // namespace detail

// Counterpart field on the complexification partner: same coefficient data,
// rho evaluated at partner elements, derivative matrices rebuilt over the
// partner's basis directions. Restricting along the inclusion recovers the
// original field.
inline Field complexify_field(const Field& f, const GroupModel& src) {
  if (!src.complexification) throw config_error(src.name + " has no complexification partner");
  const GroupModel& tgt = registry_get(src.complexification->partner);
  Field out;
  out.name = f.name;
  out.group = tgt.name;
  out.root = detail::complexify_expr(*f.root, src, tgt);
  return out;
}

// ---- catalog ---------------------------------------------------------------

// Parse "entry", "entry:2,1", "adjoint:1,3", "char:-2", "const:2.5", ... into
// a field on the given group.
inline Field field_from_name(const GroupModel& g, const std::string& spec) {
  std::string head = spec, args;
  if (auto pos = spec.find(':'); pos != std::string::npos) {
    head = spec.substr(0, pos);
    args = spec.substr(pos + 1);
  }
  auto parse_two = [&](int& i, int& j) {
    if (args.empty()) {
      i = 1;
      j = 1;
      return;
    }
    auto comma = args.find(',');
    if (comma == std::string::npos) throw config_error("expected i,j after '" + head + ":'");
    i = std::stoi(args.substr(0, comma));
    j = std::stoi(args.substr(comma + 1));
  };
  if (head == "entry" || head == "entry11") {
    int i = 1, j = 1;
    if (head == "entry") parse_two(i, j);
    return make_entry_field(g, i, j);
  }
  if (head == "trace") return make_trace_field(g);
  if (head == "adjoint") {
    int i = 1, j = 1;
    parse_two(i, j);
    return make_adjoint_entry_field(g, i, j);
  }
  if (head == "char") return make_char_field(g, args.empty() ? 1 : std::stoi(args));
  if (head == "identity") return make_char_field(g, 1);
  if (head == "trigpoly") return make_trig_poly_field(g);
  if (head == "laurent") {
    // laurent:-1=2,0=3,2=1 lists degree=coefficient pairs, real coefficients
    std::vector<std::pair<int, cd>> terms;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw config_error("expected n=c terms after 'laurent:'");
      terms.push_back({std::stoi(item.substr(0, eq)), cd(std::stod(item.substr(eq + 1)), 0)});
    }
    if (terms.empty()) throw config_error("laurent: needs at least one n=c term");
    Field f = make_laurent_poly_field(g, terms);
    f.name = "laurent(" + args + ")";
    return f;
  }
  if (head == "const")
    return make_const_field(g, args.empty() ? cd(1, 0) : cd(std::stod(args), 0));
  if (head == "product") return make_entry_product_field(g);
  if (head == "re11") return make_re_entry_field(g);
  if (head == "exptrace") return make_exp_trace_field(g);
  if (head == "rational") return make_rational_field(g);
  throw config_error(
      "unknown field '" + spec +
      "' (known: entry[:i,j], trace, adjoint[:i,j], char:p, identity, trigpoly, const[:c], "
      "product, re11, exptrace, rational)");
}

}  // namespace lietaylor
