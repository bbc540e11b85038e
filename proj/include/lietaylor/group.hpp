#pragma once

// Matrix Lie group models with a pinned Lie-algebra basis, exp/log charts,
// membership tests, and the built-in registry of groups together with their
// complexification partners.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lietaylor/linalg.hpp"
#include "lietaylor/multiindex.hpp"

namespace lietaylor {

enum class MembershipKind {
  special_linear_real,
  special_linear_complex,
  unit_circle,
  nonzero_scalar,
  unipotent_real,
  unipotent_complex,
  special_unitary,
};

struct GroupModel;

// Inclusion of a real group into its complexification partner.
struct ComplexPairLink {
  std::string partner;
  std::function<CMat(const CMat&)> eta;  // element map into the partner
  RMat tangent;                          // d_partner x d, real, = T_e(eta)
};

struct GroupModel {
  std::string name;
  int d = 0;  // real dimension of the Lie algebra
  int m = 0;  // ambient matrix size
  std::vector<CMat> basis;
  bool is_complex = false;
  double membership_tol = 1e-9;
  MembershipKind kind = MembershipKind::special_linear_complex;
  std::optional<ComplexPairLink> complexification;

  // Cached least-squares extractor: realified basis (2m^2 x d) and a d x 2m^2
  // left inverse, so algebra elements map back to coordinates in one product.
  RMat basis_realified;
  RMat coord_extractor;

  void finalize() {
    basis_realified.resize(2 * m * m, d);
    for (int j = 0; j < d; ++j) basis_realified.col(j) = realify(basis[size_t(j)]);
    coord_extractor =
        (basis_realified.transpose() * basis_realified).ldlt().solve(basis_realified.transpose());
  }

  CMat algebra_element(const RVec& coords) const {
    if (coords.size() != d) throw config_error(name + ": coordinate vector must have length " + std::to_string(d));
    CMat xi = CMat::Zero(m, m);
    for (int j = 0; j < d; ++j) xi += coords(j) * basis[size_t(j)];
    return xi;
  }

  // Same span over the complex scalars, using the first half of an (e, ie)
  // basis; only meaningful when is_complex.
  CMat algebra_element_c(const CVecX& zeta) const {
    if (!is_complex) throw config_error(name + ": complex coordinates need a complex group");
    int k = d / 2;
    if (zeta.size() != k) throw config_error(name + ": complex coordinate vector must have length " + std::to_string(k));
    CMat xi = CMat::Zero(m, m);
    for (int j = 0; j < k; ++j) xi += zeta(j) * basis[size_t(j)];
    return xi;
  }

  RVec coordinates_of(const CMat& xi) const {
    RVec x = coord_extractor * realify(xi);
    RVec resid = basis_realified * x - realify(xi);
    double scale = std::max(1.0, frob_norm(xi));
    if (resid.norm() > 1e-9 * scale)
      throw std::domain_error(name + ": matrix is not in the span of the algebra basis (residual " +
                              format_double(resid.norm()) + ")");
    return x;
  }

  // Complex coordinates of an algebra element of the complex span e_1..e_k.
  CVecX complex_coordinates_of(const CMat& xi) const {
    RVec x = coordinates_of(xi);
    int k = d / 2;
    CVecX z(k);
    for (int j = 0; j < k; ++j) z(j) = cd(x(j), x(k + j));
    return z;
  }

  double tol_for(const CMat& g) const {
    double s = op_norm(g);
    return membership_tol * std::max(1.0, s * s);
  }

  bool member(const CMat& g, std::string* why = nullptr) const {
    if (g.rows() != m || g.cols() != m) {
      if (why) *why = "wrong ambient size";
      return false;
    }
    double tol = tol_for(g);
    auto fail = [&](const std::string& msg) {
      if (why) *why = msg;
      return false;
    };
    switch (kind) {
      case MembershipKind::special_linear_real: {
        double im = 0;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) im = std::max(im, std::abs(g(i, j).imag()));
        if (im > tol) return fail("entries are not real");
        if (std::abs(g.determinant() - cd(1, 0)) > tol) return fail("determinant is not 1");
        return true;
      }
      case MembershipKind::special_linear_complex:
        if (std::abs(g.determinant() - cd(1, 0)) > tol) return fail("determinant is not 1");
        return true;
      case MembershipKind::unit_circle:
        if (std::abs(std::abs(g(0, 0)) - 1.0) > tol) return fail("modulus is not 1");
        return true;
      case MembershipKind::nonzero_scalar:
        if (std::abs(g(0, 0)) < 1e-100) return fail("value is 0");
        return true;
      case MembershipKind::unipotent_real:
      case MembershipKind::unipotent_complex: {
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            cd want = (i == j) ? cd(1, 0) : cd(0, 0);
            bool free_slot = (j == m - 1 && i < m - 1);
            if (!free_slot && std::abs(g(i, j) - want) > tol) return fail("not unipotent of translation shape");
            if (free_slot && kind == MembershipKind::unipotent_real && std::abs(g(i, j).imag()) > tol)
              return fail("translation part is not real");
          }
        return true;
      }
      case MembershipKind::special_unitary: {
        CMat gram = g.adjoint() * g;
        if ((gram - cidentity(m)).norm() > tol) return fail("not unitary");
        if (std::abs(g.determinant() - cd(1, 0)) > tol) return fail("determinant is not 1");
        return true;
      }
    }
    return fail("unknown membership kind");
  }

  CMat identity() const { return cidentity(m); }
};

inline CMat exp_group(const GroupModel& g, const RVec& coords) {
  if (!coords.allFinite()) throw std::invalid_argument("exp_group: coordinates must be finite");
  return expm(g.algebra_element(coords));
}

inline CMat exp_group(const GroupModel& g, const CMat& xi) {
  (void)g;
  return expm(xi);
}

// Principal-branch chart inverse; reports the offending eigenvalue when the
// element is outside the chart, and rejects results outside the algebra span.
inline RVec log_group(const GroupModel& g, const CMat& elem) {
  CMat xi = logm_principal(elem);
  return g.coordinates_of(xi);
}

struct GroupMorphism {
  std::string source;
  std::string target;
  std::function<CMat(const CMat&)> element_map;
  RMat tangent_map;  // d_target x d_source
};

namespace detail {

inline GroupModel make_u1() {
  GroupModel g;
  g.name = "U1";
  g.d = 1;
  g.m = 1;
  CMat b(1, 1);
  b(0, 0) = cd(0, kTwoPi);
  g.basis = {b};
  g.is_complex = false;
  g.kind = MembershipKind::unit_circle;
  ComplexPairLink link;
  link.partner = "Ctimes";
  link.eta = [](const CMat& x) { return x; };
  link.tangent = RMat::Zero(2, 1);
  link.tangent(0, 0) = 1.0;
  g.complexification = link;
  g.finalize();
  return g;
}

inline GroupModel make_ctimes() {
  GroupModel g;
  g.name = "Ctimes";
  g.d = 2;
  g.m = 1;
  CMat b1(1, 1), b2(1, 1);
  b1(0, 0) = cd(0, kTwoPi);
  b2(0, 0) = cd(0, 1) * b1(0, 0);
  g.basis = {b1, b2};
  g.is_complex = true;
  g.kind = MembershipKind::nonzero_scalar;
  g.finalize();
  return g;
}

inline GroupModel make_rd(int k) {
  GroupModel g;
  g.name = "R" + std::to_string(k);
  g.d = k;
  g.m = k + 1;
  for (int j = 0; j < k; ++j) {
    CMat b = CMat::Zero(g.m, g.m);
    b(j, g.m - 1) = cd(1, 0);
    g.basis.push_back(b);
  }
  g.is_complex = false;
  g.kind = MembershipKind::unipotent_real;
  ComplexPairLink link;
  link.partner = "C" + std::to_string(k);
  link.eta = [](const CMat& x) { return x; };
  link.tangent = RMat::Zero(2 * k, k);
  for (int j = 0; j < k; ++j) link.tangent(j, j) = 1.0;
  g.complexification = link;
  g.finalize();
  return g;
}

inline GroupModel make_cd(int k) {
  GroupModel g;
  g.name = "C" + std::to_string(k);
  g.d = 2 * k;
  g.m = k + 1;
  for (int j = 0; j < k; ++j) {
    CMat b = CMat::Zero(g.m, g.m);
    b(j, g.m - 1) = cd(1, 0);
    g.basis.push_back(b);
  }
  for (int j = 0; j < k; ++j) g.basis.push_back(cd(0, 1) * g.basis[size_t(j)]);
  g.is_complex = true;
  g.kind = MembershipKind::unipotent_complex;
  g.finalize();
  return g;
}

inline CMat sl2_H() {
  CMat h(2, 2);
  h << cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0);
  return h;
}
inline CMat sl2_E() {
  CMat e(2, 2);
  e << cd(0, 0), cd(1, 0), cd(0, 0), cd(0, 0);
  return e;
}
inline CMat sl2_F() {
  CMat f(2, 2);
  f << cd(0, 0), cd(0, 0), cd(1, 0), cd(0, 0);
  return f;
}

inline GroupModel make_sl2r() {
  GroupModel g;
  g.name = "SL2R";
  g.d = 3;
  g.m = 2;
  g.basis = {sl2_H(), sl2_E(), sl2_F()};
  g.is_complex = false;
  g.kind = MembershipKind::special_linear_real;
  ComplexPairLink link;
  link.partner = "SL2C";
  link.eta = [](const CMat& x) { return x; };
  link.tangent = RMat::Zero(6, 3);
  for (int j = 0; j < 3; ++j) link.tangent(j, j) = 1.0;
  g.complexification = link;
  g.finalize();
  return g;
}

inline GroupModel make_sl2c() {
  GroupModel g;
  g.name = "SL2C";
  g.d = 6;
  g.m = 2;
  g.basis = {sl2_H(), sl2_E(), sl2_F(), cd(0, 1) * sl2_H(), cd(0, 1) * sl2_E(), cd(0, 1) * sl2_F()};
  g.is_complex = true;
  g.kind = MembershipKind::special_linear_complex;
  g.finalize();
  return g;
}

inline GroupModel make_su2() {
  GroupModel g;
  g.name = "SU2";
  g.d = 3;
  g.m = 2;
  CMat u1 = cd(0, 1) * sl2_H();
  CMat u2 = sl2_E() - sl2_F();
  CMat u3 = cd(0, 1) * (sl2_E() + sl2_F());
  g.basis = {u1, u2, u3};
  g.is_complex = false;
  g.kind = MembershipKind::special_unitary;
  ComplexPairLink link;
  link.partner = "SL2C";
  link.eta = [](const CMat& x) { return x; };
  // u1 = i*H, u2 = E - F, u3 = i*(E + F) in the {H,E,F,iH,iE,iF} basis.
  link.tangent = RMat::Zero(6, 3);
  link.tangent(3, 0) = 1.0;
  link.tangent(1, 1) = 1.0;
  link.tangent(2, 1) = -1.0;
  link.tangent(4, 2) = 1.0;
  link.tangent(5, 2) = 1.0;
  g.complexification = link;
  g.finalize();
  return g;
}

inline const std::map<std::string, GroupModel>& registry() {
  static const std::map<std::string, GroupModel> reg = [] {
    std::map<std::string, GroupModel> r;
    for (GroupModel g : {make_u1(), make_ctimes(), make_sl2r(), make_sl2c(), make_su2()})
      r.emplace(g.name, std::move(g));
    for (int k = 1; k <= 4; ++k) {
      GroupModel a = make_rd(k), b = make_cd(k);
      r.emplace(a.name, std::move(a));
      r.emplace(b.name, std::move(b));
    }
    return r;
  }();
  return reg;
}

}  // namespace detail

inline const GroupModel& registry_get(const std::string& name) {
  const auto& reg = detail::registry();
  auto it = reg.find(name);
  if (it == reg.end()) {
    std::string known;
    for (const auto& kv : reg) {
      if (!known.empty()) known += ", ";
      known += kv.first;
    }
    throw config_error("unknown group '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

inline std::vector<std::string> registry_names() {
  std::vector<std::string> out;
  for (const auto& kv : detail::registry()) out.push_back(kv.first);
  return out;
}

// Inclusion morphism of a real group into its complexification partner.
inline GroupMorphism complexification_morphism(const GroupModel& g) {
  if (!g.complexification) throw config_error(g.name + " has no complexification partner");
  GroupMorphism mor;
  mor.source = g.name;
  mor.target = g.complexification->partner;
  mor.element_map = g.complexification->eta;
  mor.tangent_map = g.complexification->tangent;
  return mor;
}

// Covering of the circle by the line, t -> e^{2 pi i t}.
inline GroupMorphism circle_covering() {
  GroupMorphism mor;
  mor.source = "R1";
  mor.target = "U1";
  mor.element_map = [](const CMat& x) {
    CMat out(1, 1);
    out(0, 0) = std::exp(cd(0, kTwoPi) * x(0, 1));
    return out;
  };
  mor.tangent_map = RMat::Ones(1, 1);
  return mor;
}

// Multiplication by i on a complex group's algebra, in real coordinates of an
// (e, ie) basis: (x, y) -> (-y, x).
inline RMat mult_i_matrix(const GroupModel& g) {
  if (!g.is_complex) throw config_error(g.name + ": mult_i needs a complex group");
  int k = g.d / 2;
  RMat j = RMat::Zero(g.d, g.d);
  for (int a = 0; a < k; ++a) {
    j(a, k + a) = -1.0;
    j(k + a, a) = 1.0;
  }
  return j;
}

// Real partner coordinates of a complexified source tangent vector:
// zeta in C^{d_src} maps to M * Re(zeta) + J * M * Im(zeta).
inline RVec complexified_coordinates(const GroupModel& src, const CVecX& zeta) {
  if (!src.complexification) throw config_error(src.name + " has no complexification partner");
  const GroupModel& tgt = registry_get(src.complexification->partner);
  if (zeta.size() != src.d) throw config_error("complexified coordinate vector must have length " + std::to_string(src.d));
  const RMat& m = src.complexification->tangent;
  RMat j = mult_i_matrix(tgt);
  RVec re(src.d), im(src.d);
  for (int a = 0; a < src.d; ++a) {
    re(a) = zeta(a).real();
    im(a) = zeta(a).imag();
  }
  return m * re + j * (m * im);
}

// Inverse of complexified_coordinates: recovers zeta in C^{d_src} from real
// partner coordinates y by solving [M | J M] [Re zeta; Im zeta] = y (the block
// matrix is square since d_tgt = 2 d_src for every registered pair).
inline CVecX pair_complex_coordinates(const GroupModel& src, const RVec& y) {
  if (!src.complexification) throw config_error(src.name + " has no complexification partner");
  const GroupModel& tgt = registry_get(src.complexification->partner);
  if (y.size() != tgt.d)
    throw config_error("partner coordinate vector must have length " + std::to_string(tgt.d));
  if (tgt.d != 2 * src.d) throw config_error("pair dimensions are inconsistent");
  const RMat& m = src.complexification->tangent;
  RMat a(tgt.d, tgt.d);
  a.leftCols(src.d) = m;
  a.rightCols(src.d) = mult_i_matrix(tgt) * m;
  RVec sol = a.colPivHouseholderQr().solve(y);
  if ((a * sol - y).norm() > 1e-9 * std::max(1.0, y.norm()))
    throw std::domain_error("partner coordinates are not in the image of the complexified tangent map");
  CVecX zeta(src.d);
  for (int b = 0; b < src.d; ++b) zeta(b) = cd(sol(b), sol(src.d + b));
  return zeta;
}

}  // namespace lietaylor
