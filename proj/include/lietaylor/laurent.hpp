#pragma once

// Circle-group Laurent tools: trapezoid coefficient extraction, the Lie-Taylor
// moment identity, the seminorm bound through Laurent coefficients, and
// extension off the circle by the entire 1-d series of the chart pullback.

#include <cmath>
#include <string>
#include <vector>

#include "lietaylor/majorant.hpp"

namespace lietaylor {

struct LaurentData {
  std::string field;
  int n_neg = 0;
  int n_pos = 0;
  int nodes = 0;
  std::vector<cd> a;  // a_{-n_neg} ... a_{n_pos}
  double residual_estimate = 0;
  bool aliasing_warning = false;

  const cd& at(int n) const {
    if (n < -n_neg || n > n_pos) throw config_error("laurent coefficient index out of range");
    return a[size_t(n + n_neg)];
  }
};

namespace detail {

inline void require_circle(const GroupModel& model) {
  if (model.kind != MembershipKind::unit_circle)
    throw config_error("laurent tools need the circle group, got " + model.name);
}

}  // namespace detail

// a_n = (1/M) sum_j phi(e^{2 pi i j / M}) e^{-2 pi i n j / M}.
inline LaurentData laurent_coefficients(const Field& f, const GroupModel& model, int n_neg,
                                        int n_pos, int M = 0) {
  detail::require_circle(model);
  if (n_neg < 0 || n_pos < 0) throw config_error("laurent ranges must be >= 0");
  int span = 2 * (n_neg + n_pos + 1);
  if (M == 0) {
    M = 64;
    while (M < span) M *= 2;
  }
  if (M < span)
    throw config_error("laurent node count " + std::to_string(M) + " is below 2(N_neg+N_pos+1) = " +
                       std::to_string(span));
  LaurentData out;
  out.field = f.name;
  out.n_neg = n_neg;
  out.n_pos = n_pos;
  out.nodes = M;
  out.aliasing_warning = std::max(n_neg, n_pos) > M / 4;
  std::vector<cd> fx(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    CMat g(1, 1);
    g(0, 0) = std::exp(cd(0, kTwoPi * j / M));
    fx[size_t(j)] = field_eval(f, g);
  }
  auto coefficient = [&](int n) {
    KahanSumC acc;
    for (int j = 0; j < M; ++j)
      acc.add(fx[size_t(j)] * std::exp(cd(0, -kTwoPi * double(n) * j / M)));
    return acc.value() / double(M);
  };
  out.a.resize(size_t(n_neg + n_pos) + 1);
  parallel_for(std::int64_t(out.a.size()),
               [&](std::int64_t i) { out.a[size_t(i)] = coefficient(int(i) - n_neg); });
  // Probe a few coefficients just outside the requested band.
  double res = 0;
  for (int extra = 1; extra <= 4; ++extra) {
    if (n_pos + extra <= M / 2) res = std::max(res, std::abs(coefficient(n_pos + extra)));
    if (n_neg + extra <= M / 2) res = std::max(res, std::abs(coefficient(-(n_neg + extra))));
  }
  out.residual_estimate = res;
  return out;
}

// L(1)^k phi (1) = (2 pi i)^k sum_n n^k a_n.
struct LaurentIdentityReport {
  int max_order = 0;
  std::vector<cd> lhs, rhs;
  double max_deviation = 0;
};

inline LaurentIdentityReport laurent_lie_taylor_check(const Field& f, const GroupModel& model,
                                                      int K, const LaurentData& L) {
  detail::require_circle(model);
  LaurentIdentityReport rep;
  rep.max_order = K;
  DerivMethod method = preferred_method(f, model);
  for (int k = 0; k <= K; ++k) {
    MultiIndex alpha(size_t(k), 1);
    cd lhs = lie_derivative(f, model, model.identity(), alpha, method);
    KahanSumC acc;
    for (int n = -L.n_neg; n <= L.n_pos; ++n)
      acc.add(std::pow(double(n), k) * L.at(n));
    cd rhs = std::pow(cd(0, kTwoPi), k) * acc.value();
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - rhs));
  }
  return rep;
}

// q_r(phi) <= sum_n |a_n| e^{2 pi r |n|}.
struct LaurentSeminormReport {
  double q = 0;
  double bound = 0;
  double slack = 0;
  bool pass = false;
};

inline LaurentSeminormReport laurent_seminorm_bound(const Field& f, const GroupModel& model,
                                                    double r, int N, const LaurentData& L) {
  detail::require_circle(model);
  LaurentSeminormReport rep;
  rep.q = seminorm_q(f, model, r, N, preferred_method(f, model)).value;
  KahanSum acc;
  for (int n = -L.n_neg; n <= L.n_pos; ++n)
    acc.add(std::abs(L.at(n)) * std::exp(kTwoPi * r * std::abs(double(n))));
  rep.bound = acc.value();
  rep.slack = rep.bound - rep.q;
  rep.pass = rep.slack >= -1e-9 * std::max(1.0, rep.bound);
  return rep;
}

// Extension off the circle through the entire series F of the chart pullback:
// Phi(target) = F(t - i log|target| / 2 pi) with target = |target| e^{2 pi i t}.
struct LaurentExtendResult {
  cd value{0, 0};
  cd zeta{0, 0};
  int order = 0;
};

inline LaurentExtendResult laurent_extend(const Field& f, const GroupModel& model, const cd& target,
                                          int N = 48) {
  detail::require_circle(model);
  if (std::abs(target) == 0.0)
    throw std::domain_error("laurent_extend: target 0 is outside the punctured plane");
  LaurentExtendResult out;
  out.order = N;
  double t = std::arg(target) / kTwoPi;
  out.zeta = cd(t, -std::log(std::abs(target)) / kTwoPi);
  RVec xi(1);
  xi(0) = 1.0;
  std::vector<cd> coeff = taylor1d_stream(f, model, model.identity(), xi, N);
  KahanSumC acc;
  cd zp(1, 0);
  for (int k = 0; k <= N; ++k) {
    acc.add(coeff[size_t(k)] * zp);
    zp *= out.zeta;
  }
  out.value = acc.value();
  return out;
}

}  // namespace lietaylor
