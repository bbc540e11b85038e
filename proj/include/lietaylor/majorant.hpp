#pragma once

// Taylor majorants: weighted coefficient envelopes, truncated evaluation with
// certified or heuristic tails, the derived seminorm, Taylor evaluation and
// recentering (shift), an entirety heuristic, and the translation inequality.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lietaylor/derive.hpp"

namespace lietaylor {

struct MajorantSeries {
  std::string group;
  std::string field;
  CMat center;
  int d = 0;
  int order = 0;
  double weight = 0;        // weight exponent R; 0 is the unweighted majorant
  std::vector<double> c;    // c_n = (n!^R / n!) sum_{|alpha|=n} |T(alpha)|
};

inline MajorantSeries majorant_coefficients(const TaylorData& t, double weight = 0) {
  if (weight < 0) throw config_error("majorant weight exponent must be >= 0");
  MajorantSeries m;
  m.group = t.group;
  m.field = t.field;
  m.center = t.center;
  m.d = t.d;
  m.order = t.order;
  m.weight = weight;
  m.c.resize(size_t(t.order) + 1);
  for (int n = 0; n <= t.order; ++n) {
    KahanSum acc;
    for (const cd& v : t.coeff[size_t(n)]) acc.add(std::abs(v));
    // n!^(w-1) keeps the w = 1 case finite past the factorial overflow point
    m.c[size_t(n)] = std::pow(factorial(n), weight - 1.0) * acc.value();
  }
  return m;
}

// Analytic sup information for certified tails: |phi| <= sup_value on the
// closed coordinate ball of radius rho_sup around the expansion center.
struct TailEnvelope {
  double sup_value = 0;
  double rho_sup = 0;
};

struct MajorantValue {
  double value = 0;            // truncated sum through the stored order
  double tail = 0;             // bound (or estimate) for the discarded tail
  std::string tail_kind;       // "certified", "heuristic", or "unavailable"
};

namespace detail {

inline MajorantValue certified_tail(const MajorantSeries& m, double r, const TailEnvelope& env) {
  MajorantValue out;
  double q_lim = m.d * r * std::exp(1.0) / env.rho_sup;
  if (!(q_lim < 1.0)) {
    out.tail = std::numeric_limits<double>::infinity();
    out.tail_kind = "unavailable";
    return out;
  }
  KahanSum acc;
  double prev = 0;
  int n = m.order + 1;
  for (; n <= m.order + 100000; ++n) {
    double lt = n * std::log(m.d * r * n / env.rho_sup) - std::lgamma(double(n) + 1.0);
    double t = env.sup_value * std::exp(lt);
    acc.add(t);
    if (t < 1e-18 * (acc.value() + 1e-300)) break;
    prev = t;
  }
  (void)prev;
  out.tail = acc.value();
  out.tail_kind = "certified";
  return out;
}

inline MajorantValue heuristic_tail(const MajorantSeries& m, double r) {
  MajorantValue out;
  out.tail_kind = "heuristic";
  // Last two nonzero coefficients give a geometric decay-rate estimate.
  int i = -1, j = -1;
  for (int n = m.order; n >= 1; --n) {
    if (m.c[size_t(n)] > 0) {
      if (i < 0) {
        i = n;
      } else {
        j = n;
        break;
      }
    }
  }
  if (i < 0) {
    out.tail = 0;
    return out;
  }
  double rho_hat;
  if (j < 0) {
    rho_hat = std::pow(m.c[size_t(i)], 1.0 / i);
  } else {
    rho_hat = std::pow(m.c[size_t(i)] / m.c[size_t(j)], 1.0 / (i - j));
  }
  double q = rho_hat * r;
  if (!(q < 1.0)) {
    out.tail = std::numeric_limits<double>::infinity();
    out.tail_kind = "unavailable";
    return out;
  }
  double first_missing = m.c[size_t(i)] * std::pow(r, i) * std::pow(q, double(m.order + 1 - i));
  out.tail = first_missing / (1.0 - q);
  return out;
}

}  // namespace detail

inline MajorantValue majorant_eval(const MajorantSeries& m, double r,
                                   const std::optional<TailEnvelope>& env = std::nullopt) {
  if (r < 0) throw config_error("majorant_eval: radius must be >= 0");
  MajorantValue out = env ? detail::certified_tail(m, r, *env) : detail::heuristic_tail(m, r);
  KahanSum acc;
  double rn = 1;
  for (int n = 0; n <= m.order; ++n) {
    acc.add(m.c[size_t(n)] * rn);
    rn *= r;
  }
  out.value = acc.value();
  if (r == 0) {
    out.tail = 0;
    out.tail_kind = "certified";
  }
  return out;
}

// Seminorm q_r(phi): unweighted majorant of the identity-centered Taylor data.
inline MajorantValue seminorm_q(const Field& f, const GroupModel& model, double r, int N,
                                const DerivMethod& method = DerivMethod::exact()) {
  TaylorData t = taylor_data(f, model, model.identity(), N, method);
  return majorant_eval(majorant_coefficients(t, 0), r);
}

// ---- Taylor evaluation and recentering ---------------------------------------

// sum_{n<=cap} (1/n!) sum_alpha T(alpha) z^alpha, complex coordinates allowed.
inline cd taylor_eval(const TaylorData& t, const CVecX& z, int order_cap = -1) {
  if (z.size() != t.d) throw config_error("taylor_eval: coordinate vector must have length " + std::to_string(t.d));
  int cap = order_cap < 0 ? t.order : std::min(order_cap, t.order);
  std::vector<KahanSumC> per_order(size_t(cap) + 1);
  std::function<void(int, std::int64_t, cd)> walk = [&](int depth, std::int64_t rank, cd prod) {
    per_order[size_t(depth)].add(prod * t.coeff[size_t(depth)][size_t(rank)]);
    if (depth == cap) return;
    for (int k = 0; k < t.d; ++k) walk(depth + 1, rank * t.d + k, prod * z(k));
  };
  walk(0, 0, cd(1, 0));
  KahanSumC total;
  for (int n = 0; n <= cap; ++n) total.add(per_order[size_t(n)].value() / factorial(n));
  return total.value();
}

inline cd taylor_eval(const TaylorData& t, const RVec& xi, int order_cap = -1) {
  CVecX z(xi.size());
  for (int k = 0; k < xi.size(); ++k) z(k) = cd(xi(k), 0);
  return taylor_eval(t, z, order_cap);
}

// Recenters Taylor data from g to g exp(xi): output coefficient of the word
// beta is the prefix-shift sum over words m of length k <= K of
// T(m beta) xi^m / k!; requires input order >= N_out + K.
inline TaylorData shift_taylor_data(const TaylorData& t, const GroupModel& model, const RVec& xi,
                                    int N_out, int K) {
  if (N_out < 0 || K < 0) throw config_error("shift_taylor_data: orders must be >= 0");
  if (t.order < N_out + K)
    throw config_error("shift_taylor_data: input order " + std::to_string(t.order) +
                       " is insufficient, need N_in >= " + std::to_string(N_out + K));
  if (xi.size() != t.d) throw config_error("shift_taylor_data: step vector must have length " + std::to_string(t.d));
  TaylorData out;
  out.group = t.group;
  out.field = t.field;
  out.center = t.center * exp_group(model, xi);
  out.d = t.d;
  out.order = N_out;
  out.method = t.method;
  out.coeff.resize(size_t(N_out) + 1);
  out.order_error.assign(size_t(N_out) + 1, 0.0);

  // xiprod[k][rank of m] = xi^m.
  std::vector<std::vector<double>> xiprod(size_t(K) + 1);
  xiprod[0] = {1.0};
  for (int k = 1; k <= K; ++k) {
    xiprod[size_t(k)].resize(size_t(pow_i64(t.d, k)));
    for (std::int64_t p = 0; p < std::int64_t(xiprod[size_t(k) - 1].size()); ++p)
      for (int a = 0; a < t.d; ++a)
        xiprod[size_t(k)][size_t(p * t.d + a)] = xiprod[size_t(k) - 1][size_t(p)] * xi(a);
  }

  for (int n = 0; n <= N_out; ++n) {
    std::int64_t block = pow_i64(t.d, n);
    out.coeff[size_t(n)].resize(size_t(block));
    parallel_for(block, [&](std::int64_t rb) {
      KahanSumC acc;
      for (int k = 0; k <= K; ++k) {
        double inv = 1.0 / factorial(k);
        const auto& src = t.coeff[size_t(k + n)];
        const auto& xp = xiprod[size_t(k)];
        for (std::int64_t rm = 0; rm < std::int64_t(xp.size()); ++rm)
          acc.add(inv * xp[size_t(rm)] * src[size_t(rm * block + rb)]);
      }
      out.coeff[size_t(n)][size_t(rb)] = acc.value();
    });
  }

  // Discarded prefix orders k > K, bounded through the input majorant at |xi|.
  MajorantSeries m = majorant_coefficients(t, 0);
  double s = sup_abs(xi);
  KahanSum trunc;
  double sj = std::pow(s, K + 1);
  for (int jj = K + 1; jj <= t.order; ++jj) {
    trunc.add(m.c[size_t(jj)] * sj);
    sj *= s;
  }
  MajorantValue mv = majorant_eval(m, s);
  double beyond = std::isfinite(mv.tail) ? mv.tail : 0.0;
  double in_err = 0;
  for (double e : t.order_error) in_err = std::max(in_err, e);
  for (int n = 0; n <= N_out; ++n)
    out.order_error[size_t(n)] = trunc.value() + beyond + in_err * std::exp(double(t.d) * s);
  return out;
}

// ---- entirety heuristic --------------------------------------------------------

struct EntiretyVerdict {
  std::string verdict;  // "consistent-with-entire", "not-entire", "inconclusive"
  double est = 0;       // max c_n^(1/n) over the last third of the window
  int window_lo = 0;
  int window_hi = 0;
};

inline EntiretyVerdict entirety_heuristic(const MajorantSeries& m) {
  if (m.order < 10) throw config_error("entirety heuristic needs majorant order >= 10");
  EntiretyVerdict out;
  out.window_lo = (2 * m.order) / 3 + 1;
  out.window_hi = m.order;
  double est = 0;
  for (int n = out.window_lo; n <= out.window_hi; ++n)
    if (m.c[size_t(n)] > 0) est = std::max(est, std::pow(m.c[size_t(n)], 1.0 / n));
  out.est = est;
  if (est < 0.1)
    out.verdict = "consistent-with-entire";
  else if (est > 0.9)
    out.verdict = "not-entire";
  else
    out.verdict = "inconclusive";
  return out;
}

// ---- translation inequality ------------------------------------------------------

struct TranslationReport {
  double lhs = 0;        // truncated majorant of the shifted field at radius r
  double rhs_value = 0;  // truncated majorant at the base point, radius r + |xi|_inf
  double rhs_tail = 0;
  std::string tail_kind;
  double slack = 0;      // rhs + tail - lhs
  bool pass = false;
};

inline TranslationReport translation_check(const Field& f, const GroupModel& model, const CMat& g,
                                           const RVec& xi, double r, int N, int K,
                                           const DerivMethod& method = DerivMethod::exact(),
                                           const std::optional<TailEnvelope>& env = std::nullopt) {
  TranslationReport rep;
  CMat shifted = g * exp_group(model, xi);
  TaylorData lhs_data = taylor_data(f, model, shifted, N, method);
  rep.lhs = majorant_eval(majorant_coefficients(lhs_data, 0), r).value;
  TaylorData rhs_data = taylor_data(f, model, g, N + K, method);
  MajorantValue rhs = majorant_eval(majorant_coefficients(rhs_data, 0), r + sup_abs(xi), env);
  rep.rhs_value = rhs.value;
  rep.rhs_tail = std::isfinite(rhs.tail) ? rhs.tail : 0.0;
  rep.tail_kind = rhs.tail_kind;
  rep.slack = rep.rhs_value + rep.rhs_tail - rep.lhs;
  rep.pass = rep.slack >= -1e-12 * std::max(1.0, rep.rhs_value);
  return rep;
}

inline int default_taylor_order(int d) {
  if (d <= 1) return 40;
  if (d == 2) return 12;
  if (d == 3) return 8;
  return 5;
}

}  // namespace lietaylor
