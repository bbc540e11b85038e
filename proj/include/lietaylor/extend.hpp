#pragma once

// Analytic continuation into the universal complexification: Cauchy-Riemann
// residuals, Taylor shadows of complexified coordinates, Steiner chains of
// certified balls along paths, stepwise continuation of Taylor data, value
// extension with default paths, extension verification against the direct
// counterpart, path independence, and deck-transformation periodicity.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "lietaylor/cauchy.hpp"

namespace lietaylor {

// max_n |L_{e_{k+n}} phi - i L_{e_n} phi| at g, over the holomorphic pairs of
// an (e, ie) basis.
inline double cauchy_riemann_residual(const Field& f, const GroupModel& model, const CMat& g,
                                      const std::optional<DerivMethod>& method_in = std::nullopt) {
  if (!model.is_complex)
    throw config_error("cauchy_riemann_residual needs a complex group, got " + model.name);
  DerivMethod method = method_in ? *method_in : preferred_method(f, model);
  int k = model.d / 2;
  double worst = 0;
  for (int n = 1; n <= k; ++n) {
    cd a = lie_derivative(f, model, g, MultiIndex{k + n}, method);
    cd b = lie_derivative(f, model, g, MultiIndex{n}, method);
    worst = std::max(worst, std::abs(a - cd(0, 1) * b));
  }
  return worst;
}

// ---- holomorphic shadow --------------------------------------------------------

struct ShadowValue {
  cd value{0, 0};
  double tail = 0;
  bool radius_warning = false;
  CVecX z;  // complexified source coordinates of the request
};

// Evaluates the Taylor series of phi at the identity on the complexified
// coordinates of zeta (given in real partner coordinates).
inline ShadowValue holomorphic_shadow(const Field& f, const GroupModel& src, const RVec& zeta,
                                      int N = -1, double probe_radius = 0.5) {
  if (N < 0) N = default_taylor_order(src.d);
  ShadowValue out;
  out.z = pair_complex_coordinates(src, zeta);
  TaylorData t = taylor_data(f, src, src.identity(), N, preferred_method(f, src));
  out.value = taylor_eval(t, out.z);
  double zr = 0;
  for (int b = 0; b < src.d; ++b) zr = std::max(zr, std::abs(out.z(b)));
  MajorantValue mv = majorant_eval(majorant_coefficients(t, 0), zr);
  out.tail = std::isfinite(mv.tail) ? mv.tail : std::numeric_limits<double>::infinity();
  out.radius_warning = zr > probe_radius;
  return out;
}

// ---- Steiner chains ------------------------------------------------------------

struct SteinerChain {
  std::string group;
  double r = 0;
  double margin = 0.2;
  std::vector<double> times;
  std::vector<CMat> centers;
};

// Greedy chain over the path samples: a sample is retained under the current
// center while its certified distance bound stays below r (1 - margin), so
// consecutive centers and all intermediate samples lie in the r-balls.
inline SteinerChain steiner_chain(const GroupModel& model, const MetricModel& metric,
                                  const GroupPath& path, double r, double margin = 0.2) {
  validate_path(path);
  if (!(r > 0)) throw config_error("steiner chain radius must be positive");
  if (!(margin >= 0 && margin < 1)) throw config_error("steiner chain margin must lie in [0,1)");
  SteinerChain chain;
  chain.group = model.name;
  chain.r = r;
  chain.margin = margin;
  size_t n = path.samples.size();
  std::vector<size_t> picks{0};
  size_t cur = 0, i = 1;
  while (i < n) {
    DistanceBound b = distance_upper_bound(model, metric, path.samples[cur], path.samples[i]);
    // tolerance keeps exact-boundary samples (arc length == r(1-margin)) retained
    if (!b.unbounded && b.value <= r * (1.0 - margin) * (1.0 + 1e-12)) {
      ++i;
      continue;
    }
    if (i - 1 == cur)
      throw refusal_error("steiner chain: consecutive samples exceed r(1-margin) at t = " +
                          format_double(path.times[i]) + ", resample the path");
    cur = i - 1;
    picks.push_back(cur);
  }
  if (picks.back() != n - 1) picks.push_back(n - 1);
  for (size_t p : picks) {
    chain.times.push_back(path.times[p]);
    chain.centers.push_back(path.samples[p]);
  }
  return chain;
}

// Re-verifies both chain invariants: every path sample sits in some center's
// r-ball, and consecutive centers are within r of each other.
struct ChainCheck {
  bool covered = false;
  bool linked = false;
  double worst_cover = 0;
  double worst_link = 0;
};

inline ChainCheck verify_chain(const GroupModel& model, const MetricModel& metric,
                               const GroupPath& path, const SteinerChain& chain,
                               double tol = 1e-9) {
  ChainCheck c;
  c.covered = true;
  for (const CMat& s : path.samples) {
    double best = std::numeric_limits<double>::infinity();
    for (const CMat& ctr : chain.centers) {
      DistanceBound b = distance_upper_bound(model, metric, ctr, s);
      if (!b.unbounded) best = std::min(best, b.value);
    }
    c.worst_cover = std::max(c.worst_cover, best);
    if (!(best <= chain.r + tol)) c.covered = false;
  }
  c.linked = true;
  for (size_t l = 0; l + 1 < chain.centers.size(); ++l) {
    DistanceBound b = distance_upper_bound(model, metric, chain.centers[l], chain.centers[l + 1]);
    double v = b.unbounded ? std::numeric_limits<double>::infinity() : b.value;
    c.worst_link = std::max(c.worst_link, v);
    if (!(v <= chain.r + tol)) c.linked = false;
  }
  return c;
}

// ---- continuation ---------------------------------------------------------------

struct ContinuationStep {
  RVec xi;                 // log of the center increment, partner coordinates
  cd shifted_value{0, 0};  // order-K Taylor prediction at the next center
  cd center_value{0, 0};   // value of the data actually used there
  double deviation = 0;    // |shifted - center| when an exact recompute exists
};

struct ContinuationOptions {
  double chain_radius = 0;  // 0: per-group default
  int order = 8;            // N of the carried Taylor data
  int shift_order = 8;      // K of the recentering sums
  double margin = 0.2;
  int per_segment = 64;
};

inline double default_chain_radius(const std::string& partner) {
  if (partner == "SL2C") return 0.12;
  return 0.05;
}

struct ContinuationState {
  std::string source_group;
  std::string partner_group;
  std::string field;
  SteinerChain chain;
  std::vector<ContinuationStep> steps;
  TaylorData data;  // Taylor data at the final center
  cd value{0, 0};
  double error_estimate = 0;
};

inline ContinuationState continue_along_path(const Field& f, const GroupModel& src,
                                             const GroupPath& path,
                                             const ContinuationOptions& opt = {}) {
  if (!src.complexification)
    throw config_error(src.name + " has no complexification partner to continue into");
  const GroupModel& partner = registry_get(src.complexification->partner);
  if (path.group != partner.name)
    throw config_error("continuation path must live on " + partner.name + ", got " + path.group);
  validate_path(path);
  if (op_norm(CMat(path.samples.front() - partner.identity())) > 1e-12)
    throw config_error("continuation path must start at the identity");

  ContinuationState st;
  st.source_group = src.name;
  st.partner_group = partner.name;
  st.field = f.name;
  Field fc = complexify_field(f, src);
  double r = opt.chain_radius > 0 ? opt.chain_radius : default_chain_radius(partner.name);
  MetricModel metric = make_metric(partner);
  st.chain = steiner_chain(partner, metric, path, r, opt.margin);

  bool recompute = field_has_exact(fc);
  size_t steps = st.chain.centers.size() - 1;
  if (!recompute) {
    // Black-box data cannot be recentered without spending K orders per step.
    int needed = opt.order + opt.shift_order * int(steps);
    DerivMethod m = preferred_method(fc, partner);
    if (m.kind != DerivMethod::Kind::cauchy_quadrature)
      throw refusal_error("continuation of '" + f.name + "' has no usable derivative oracle");
    if (needed > m.n_max) {
      double cost = std::pow(double(m.nodes), double(needed));
      throw refusal_error("continuation of black-box '" + f.name + "' over " +
                          std::to_string(steps) + " steps needs initial order " +
                          std::to_string(needed) + "; about " + format_double(cost) +
                          " field evaluations exceed the budget");
    }
    st.data = taylor_data(fc, partner, partner.identity(), needed, m);
  } else {
    st.data = taylor_data(fc, partner, partner.identity(), opt.order, DerivMethod::exact());
  }

  KahanSum err;
  for (size_t l = 0; l < steps; ++l) {
    ContinuationStep step;
    step.xi = log_group(partner, CMat(st.chain.centers[l].inverse() * st.chain.centers[l + 1]));
    step.shifted_value = taylor_eval(st.data, step.xi, opt.shift_order);
    if (recompute) {
      st.data = taylor_data(fc, partner, st.chain.centers[l + 1], opt.order, DerivMethod::exact());
      step.center_value = st.data.value();
      step.deviation = std::abs(step.shifted_value - step.center_value);
      err.add(1e-14 * (1.0 + std::abs(step.center_value)));
    } else {
      st.data = shift_taylor_data(st.data, partner, step.xi, st.data.order - opt.shift_order,
                                  opt.shift_order);
      step.center_value = st.data.value();
      step.deviation = 0;
      err.add(st.data.order_error[0]);
    }
    st.steps.push_back(step);
  }
  st.value = st.data.value();
  st.error_estimate = err.value();
  for (const ContinuationStep& s : st.steps) st.error_estimate += s.deviation;
  return st;
}

// Default path to a target: principal log when available, else branch square
// roots split the element into at most 16 exponential legs; long legs are
// subdivided so the sampling stays fine.
inline GroupPath default_path(const GroupModel& partner, const CMat& target,
                              int per_segment = 64) {
  std::string why;
  if (!partner.member(target, &why))
    throw std::domain_error("extension target is not in " + partner.name + ": " + why);
  std::vector<RVec> logs;
  std::function<void(const CMat&, int)> split = [&](const CMat& w, int depth) {
    try {
      RVec xi = log_group(partner, w);
      logs.push_back(xi);
      return;
    } catch (const std::domain_error&) {
    }
    if (depth <= 0)
      throw refusal_error("no default path: target stays outside the log chart after 4 square-root splits");
    CMat s = sqrtm_branch(w);
    if (!partner.member(s) || op_norm(CMat(s * s - w)) > 1e-10 * std::max(1.0, op_norm(w)))
      throw refusal_error("no default path: branch square root left the group");
    size_t before = logs.size();
    split(s, depth - 1);
    size_t after = logs.size();
    for (size_t q = before; q < after; ++q) logs.push_back(logs[q]);
  };
  split(target, 4);
  std::vector<PathSegment> segs;
  for (const RVec& xi : logs) {
    int pieces = std::max(1, int(std::ceil(sup_abs(xi) / 0.5)));
    for (int p = 0; p < pieces; ++p) segs.push_back({RVec(xi / pieces), 1.0});
  }
  return path_from_segments(partner, segs, per_segment);
}

struct ExtensionResult {
  cd value{0, 0};
  double error_estimate = 0;
  int chain_steps = 0;
  RVec residual_offset;  // log(last-center^{-1} target), zero for default paths
};

inline ExtensionResult extend_value(const Field& f, const GroupModel& src, const CMat& target,
                                    const GroupPath* path = nullptr,
                                    const ContinuationOptions& opt = {}) {
  if (!src.complexification)
    throw config_error(src.name + " has no complexification partner to extend into");
  const GroupModel& partner = registry_get(src.complexification->partner);
  GroupPath p = path ? *path : default_path(partner, target, opt.per_segment);
  ContinuationState st = continue_along_path(f, src, p, opt);
  ExtensionResult out;
  out.chain_steps = int(st.steps.size());
  out.residual_offset = log_group(partner, CMat(st.chain.centers.back().inverse() * target));
  out.value = taylor_eval(st.data, out.residual_offset, opt.shift_order);
  MajorantValue mv = majorant_eval(majorant_coefficients(st.data, 0), sup_abs(out.residual_offset));
  out.error_estimate = st.error_estimate + (std::isfinite(mv.tail) ? mv.tail : 0.0);
  return out;
}

// ---- verification against the direct counterpart -----------------------------------

struct VerifyExtensionReport {
  double max_coeff_deviation = 0;  // complex-linear Taylor identity, orders <= N_cmp
  double max_value_deviation = 0;  // extension values vs counterpart at the targets
  int samples = 0;
  int words = 0;
};

inline VerifyExtensionReport verify_extension(const Field& f, const GroupModel& src,
                                              const std::vector<CMat>& targets, int N_cmp = 3,
                                              int n_samples = 20, std::uint64_t seed = 20240911,
                                              const ContinuationOptions& opt = {}) {
  if (!src.complexification)
    throw config_error(src.name + " has no complexification partner");
  if (!field_has_exact(f))
    throw refusal_error("extension verification needs an exact oracle for '" + f.name + "'");
  const GroupModel& partner = registry_get(src.complexification->partner);
  Field fc = complexify_field(f, src);
  GroupMorphism eta = complexification_morphism(src);

  // Partner basis directions written in complexified source coordinates.
  std::vector<CVecX> partner_dirs;
  for (int a = 0; a < partner.d; ++a) {
    RVec unit = RVec::Zero(partner.d);
    unit(a) = 1;
    partner_dirs.push_back(pair_complex_coordinates(src, unit));
  }

  VerifyExtensionReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  std::vector<CMat> points;
  for (int s = 0; s < n_samples; ++s) {
    RVec xi(src.d);
    for (int b = 0; b < src.d; ++b) xi(b) = u(rng);
    points.push_back(exp_group(src, xi));
  }
  rep.samples = int(points.size());
  for (const CMat& g : points) {
    CMat hg = eta.element_map(g);
    for (int n = 0; n <= N_cmp; ++n) {
      std::int64_t total = pow_i64(partner.d, n);
      for (std::int64_t rk = 0; rk < total; ++rk) {
        MultiIndex alpha = multiindex_unrank(rk, n, partner.d);
        std::vector<CVecX> dirs;
        for (int a : alpha) dirs.push_back(partner_dirs[size_t(a - 1)]);
        cd lhs = exact_lie_derivative_dirs(f, src, g, dirs);
        cd rhs = exact_lie_derivative(fc, partner, hg, alpha);
        rep.max_coeff_deviation = std::max(rep.max_coeff_deviation, std::abs(lhs - rhs));
        ++rep.words;
      }
    }
  }
  for (const CMat& t : targets) {
    ExtensionResult ext = extend_value(f, src, t, nullptr, opt);
    cd direct = field_eval(fc, t);
    rep.max_value_deviation = std::max(rep.max_value_deviation, std::abs(ext.value - direct));
  }
  return rep;
}

struct PathIndependenceReport {
  cd value_a{0, 0}, value_b{0, 0};
  double difference = 0;
  double combined_error = 0;
  bool pass = false;
};

inline PathIndependenceReport path_independence_check(const Field& f, const GroupModel& src,
                                                      const GroupPath& path_a,
                                                      const GroupPath& path_b,
                                                      const ContinuationOptions& opt = {}) {
  ContinuationState a = continue_along_path(f, src, path_a, opt);
  ContinuationState b = continue_along_path(f, src, path_b, opt);
  PathIndependenceReport rep;
  rep.value_a = a.value;
  rep.value_b = b.value;
  rep.difference = std::abs(a.value - b.value);
  rep.combined_error = a.error_estimate + b.error_estimate;
  rep.pass = rep.difference <= rep.combined_error + 1e-9;
  return rep;
}

// Deck-transformation invariance of the continued covering pullback: the
// extension of p^* phi to z and to z + shift must agree.
struct PeriodicityReport {
  cd value{0, 0}, value_shifted{0, 0};
  double difference = 0;
  bool pass = false;
};

inline PeriodicityReport periodicity_check(const Field& f_u1, const cd& z, int shift,
                                           const ContinuationOptions& opt = {},
                                           double tol = 1e-8) {
  const GroupModel& r1 = registry_get("R1");
  const GroupModel& c1 = registry_get("C1");
  Field pulled = pullback_field(f_u1, circle_covering(), "cover");
  pulled.group = r1.name;
  auto c1_point = [&](const cd& w) {
    RVec coords(2);
    coords(0) = w.real();
    coords(1) = w.imag();
    return exp_group(c1, coords);
  };
  PeriodicityReport rep;
  ExtensionResult a = extend_value(pulled, r1, c1_point(z), nullptr, opt);
  ExtensionResult b = extend_value(pulled, r1, c1_point(z + cd(double(shift), 0)), nullptr, opt);
  rep.value = a.value;
  rep.value_shifted = b.value;
  rep.difference = std::abs(a.value - b.value);
  rep.pass = rep.difference <= tol;
  return rep;
}

}  // namespace lietaylor
