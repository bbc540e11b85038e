#pragma once

// JSON views of the library types. nlohmann objects keep keys sorted and
// doubles print as shortest round-trip literals, so serialized bytes are
// reproducible run to run.

#include <nlohmann/json.hpp>

#include "lietaylor/extend.hpp"
#include "lietaylor/laurent.hpp"

namespace lietaylor {

using json = nlohmann::json;

inline json to_json(const cd& z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const CMat& m) {
  json data = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) data.push_back(to_json(m(r, c)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline json to_json(const RVec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline json to_json(const CVecX& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline CMat cmat_from_json(const json& j) {
  int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
  const json& data = j.at("data");
  if (int(data.size()) != rows * cols) throw config_error("matrix data length mismatch");
  CMat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const json& e = data.at(size_t(r * cols + c));
      m(r, c) = cd(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return m;
}

inline json to_json(const TaylorData& t) {
  json blocks = json::array();
  for (const auto& block : t.coeff) {
    json b = json::array();
    for (const cd& v : block) b.push_back(to_json(v));
    blocks.push_back(b);
  }
  return json{{"group", t.group},   {"field", t.field},   {"center", to_json(t.center)},
              {"d", t.d},           {"order", t.order},   {"method", t.method},
              {"coefficients", blocks}, {"order_error", t.order_error}};
}

inline json to_json(const MajorantSeries& m) {
  return json{{"group", m.group},   {"field", m.field}, {"center", to_json(m.center)},
              {"d", m.d},           {"order", m.order}, {"weight", m.weight},
              {"coefficients", m.c}};
}

inline json to_json(const MajorantValue& v) {
  return json{{"value", v.value}, {"tail", std::isfinite(v.tail) ? json(v.tail) : json("infinite")},
              {"tail_kind", v.tail_kind}};
}

inline json to_json(const EntiretyVerdict& v) {
  return json{{"verdict", v.verdict},
              {"estimate", v.est},
              {"window", json::array({v.window_lo, v.window_hi})}};
}

inline json to_json(const RadiusEstimate& r) {
  return json{{"radius", r.infinite ? json("infinite") : json(r.radius)},
              {"heuristic", r.heuristic},
              {"est_late", r.est_late},
              {"est_mid", r.est_mid}};
}

inline json to_json(const DistanceBound& b) {
  return json{{"value", b.unbounded ? json("unbounded") : json(b.value)},
              {"unbounded", b.unbounded},
              {"segments", b.segments}};
}

inline json to_json(const BallVerdict& v) {
  return json{{"verdict", v.verdict},
              {"bound", v.unbounded ? json("unbounded") : json(v.bound)}};
}

inline json to_json(const CauchyReport& r) {
  return json{{"check", r.check}, {"order", r.order}, {"lhs", r.lhs},
              {"rhs", r.rhs},     {"slack", r.slack}, {"pass", r.pass},
              {"note", r.note}};
}

inline json to_json(const RestrictionReport& r) {
  return json{{"q_value", r.q_value},
              {"rhs_forward", r.rhs_forward},
              {"forward_pass", r.forward_pass},
              {"sup_sampled", r.sup_sampled},
              {"rhs_reverse", r.rhs_reverse},
              {"tail_kind", r.tail_kind},
              {"reverse_pass", r.reverse_pass}};
}

inline json to_json(const TranslationReport& r) {
  return json{{"lhs", r.lhs},           {"rhs_value", r.rhs_value}, {"rhs_tail", r.rhs_tail},
              {"tail_kind", r.tail_kind}, {"slack", r.slack},       {"pass", r.pass}};
}

inline json to_json(const SteinerChain& c) {
  json centers = json::array();
  for (const CMat& m : c.centers) centers.push_back(to_json(m));
  return json{{"group", c.group},   {"r", c.r},           {"margin", c.margin},
              {"times", c.times},   {"centers", centers}, {"steps", c.centers.size() - 1}};
}

inline json to_json(const ContinuationState& s) {
  json steps = json::array();
  for (const ContinuationStep& st : s.steps)
    steps.push_back(json{{"xi", to_json(st.xi)},
                         {"shifted_value", to_json(st.shifted_value)},
                         {"center_value", to_json(st.center_value)},
                         {"deviation", st.deviation}});
  return json{{"source_group", s.source_group},
              {"partner_group", s.partner_group},
              {"field", s.field},
              {"chain", to_json(s.chain)},
              {"steps", steps},
              {"value", to_json(s.value)},
              {"error_estimate", s.error_estimate}};
}

inline json to_json(const ExtensionResult& r) {
  return json{{"value", to_json(r.value)},
              {"error_estimate", r.error_estimate},
              {"chain_steps", r.chain_steps},
              {"residual_offset", to_json(r.residual_offset)}};
}

inline json to_json(const VerifyExtensionReport& r) {
  return json{{"max_coeff_deviation", r.max_coeff_deviation},
              {"max_value_deviation", r.max_value_deviation},
              {"samples", r.samples},
              {"words", r.words}};
}

inline json to_json(const PathIndependenceReport& r) {
  return json{{"value_a", to_json(r.value_a)},
              {"value_b", to_json(r.value_b)},
              {"difference", r.difference},
              {"combined_error", r.combined_error},
              {"pass", r.pass}};
}

inline json to_json(const PeriodicityReport& r) {
  return json{{"value", to_json(r.value)},
              {"value_shifted", to_json(r.value_shifted)},
              {"difference", r.difference},
              {"pass", r.pass}};
}

inline json to_json(const ShadowValue& s) {
  return json{{"value", to_json(s.value)},
              {"tail", std::isfinite(s.tail) ? json(s.tail) : json("infinite")},
              {"radius_warning", s.radius_warning},
              {"z", to_json(s.z)}};
}

inline json to_json(const LaurentData& l) {
  json coeffs = json::array();
  for (const cd& v : l.a) coeffs.push_back(to_json(v));
  return json{{"field", l.field},
              {"n_neg", l.n_neg},
              {"n_pos", l.n_pos},
              {"nodes", l.nodes},
              {"coefficients", coeffs},
              {"residual_estimate", l.residual_estimate},
              {"aliasing_warning", l.aliasing_warning}};
}

inline json to_json(const LaurentIdentityReport& r) {
  json lhs = json::array(), rhs = json::array();
  for (const cd& v : r.lhs) lhs.push_back(to_json(v));
  for (const cd& v : r.rhs) rhs.push_back(to_json(v));
  return json{{"max_order", r.max_order}, {"lhs", lhs}, {"rhs", rhs},
              {"max_deviation", r.max_deviation}};
}

inline json to_json(const LaurentSeminormReport& r) {
  return json{{"q", r.q}, {"bound", r.bound}, {"slack", r.slack}, {"pass", r.pass}};
}

inline json to_json(const LaurentExtendResult& r) {
  return json{{"value", to_json(r.value)}, {"zeta", to_json(r.zeta)}, {"order", r.order}};
}

inline json group_to_json(const GroupModel& g) {
  json basis = json::array();
  for (const CMat& b : g.basis) basis.push_back(to_json(b));
  return json{{"name", g.name},
              {"d", g.d},
              {"ambient", g.m},
              {"complex", g.is_complex},
              {"basis", basis},
              {"complexification",
               g.complexification ? json(g.complexification->partner) : json(nullptr)}};
}

}  // namespace lietaylor
