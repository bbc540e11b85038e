// Command-line front end. Every subcommand prints one JSON document (or JSONL
// for `suite`) so outputs can be piped and diffed; exit codes are 0 for
// success, 1 for a failed check, 2 for configuration problems, 3 for refusals.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lietaylor/suite.hpp"

namespace lt = lietaylor;
using lt::json;

namespace {

lt::RVec parse_coords(const std::string& s, int d) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    vals.push_back(std::stod(item));
  }
  if (int(vals.size()) != d)
    throw lt::config_error("expected " + std::to_string(d) + " comma-separated coordinates, got " +
                           std::to_string(vals.size()));
  lt::RVec v(d);
  for (int i = 0; i < d; ++i) v(i) = vals[size_t(i)];
  return v;
}

std::vector<lt::RVec> parse_vec_list(const std::string& s, int d) {
  std::vector<lt::RVec> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    out.push_back(parse_coords(item, d));
  }
  return out;
}

lt::cd parse_complex(const std::string& s) {
  std::stringstream ss(s);
  std::string re, im;
  std::getline(ss, re, ',');
  std::getline(ss, im, ',');
  return lt::cd(std::stod(re), im.empty() ? 0.0 : std::stod(im));
}

lt::MultiIndex parse_alpha(const std::string& s) {
  lt::MultiIndex alpha;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    alpha.push_back(std::stoi(item));
  }
  return alpha;
}

json read_json_arg(const std::string& s) {
  if (!s.empty() && s[0] == '@') {
    std::ifstream in(s.substr(1));
    if (!in) throw lt::config_error("cannot open " + s.substr(1));
    return json::parse(in);
  }
  return json::parse(s);
}

// Point given as one or more exponential factors: "x,y,z" or "x,y,z|u,v,w".
lt::CMat parse_point(const lt::GroupModel& g, const std::string& s) {
  if (s.empty()) return g.identity();
  lt::CMat out = g.identity();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, '|')) {
    if (item.empty()) continue;
    out = out * lt::exp_group(g, parse_coords(item, g.d));
  }
  return out;
}

lt::DerivMethod build_method(const std::string& name, int nodes, double qradius, double fd_step,
                             const lt::Field& f, const lt::GroupModel& g) {
  lt::DerivMethod m =
      name == "auto" ? lt::preferred_method(f, g) : lt::method_from_name(name);
  if (m.kind == lt::DerivMethod::Kind::cauchy_quadrature) {
    m.nodes = nodes;
    m.radius = qradius;
  }
  if (m.kind == lt::DerivMethod::Kind::finite_difference) m.step = fd_step;
  return m;
}

struct Output {
  std::string path;  // empty: stdout
  std::string format = "json";

  void emit(const json& doc, const std::string& text_line) const {
    std::string payload = format == "text" ? text_line + "\n" : doc.dump() + "\n";
    if (path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(path);
      if (!out) throw lt::config_error("cannot open output file " + path);
      out << payload;
    }
  }
  void emit_raw(const std::string& payload) const {
    if (path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(path);
      if (!out) throw lt::config_error("cannot open output file " + path);
      out << payload;
    }
  }
};

lt::GroupPath path_from_spec(const lt::GroupModel& g, const std::string& segments,
                             const std::string& path_json, int per_segment) {
  if (!path_json.empty()) {
    json j = read_json_arg(path_json);
    std::vector<lt::PathSegment> segs;
    for (const json& row : j.at("segments")) {
      lt::RVec xi(g.d);
      if (int(row.size()) != g.d) throw lt::config_error("path segment has wrong dimension");
      for (int i = 0; i < g.d; ++i) xi(i) = row.at(size_t(i)).get<double>();
      segs.push_back({xi, 1.0});
    }
    int per = j.value("per_segment", per_segment);
    return lt::path_from_segments(g, segs, per);
  }
  if (segments.empty()) throw lt::config_error("need --segments or --path");
  return lt::path_from_segments(g, parse_vec_list(segments, g.d), per_segment);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-Taylor calculus on matrix groups"};
  app.require_subcommand(1);

  std::string group = "U1", field_spec = "identity", method_name = "auto";
  std::string at, alpha_str, out_path, format = "json", target_str, segments, path_json;
  std::string xi0_str, dirs_str, gram_json, flavor = "operator", eval_str, shift_str;
  std::string from_str, to_str, center_str, point_str, target_complex, mode;
  int order = -1, shift_order = 8, nodes = 32, threads = 1, n_neg = 4, n_pos = 4;
  int order_cmp = 3, max_order = 6, per_segment = 64;
  double radius = 0.5, qradius = 0.5, fd_step = 0.1, weight = 0.0, margin = 0.2;
  double chain_radius = 0.0, tol_value = 1e-6, tol_coeff = 1e-10;
  std::uint64_t seed = 20240911;
  std::string config_path;

  app.add_option("--config", config_path, "JSON file with default option values");
  app.add_option("--threads", threads, "worker thread count");
  app.add_option("--seed", seed, "seed for randomized batteries");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "write the result to a file instead of stdout");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--group", group, "registry group name");
    cmd->add_option("--field", field_spec, "field spec, e.g. entry:1,2 / trace / char:3");
    cmd->add_option("--at", at, "base point as exp coordinates, factors split by |");
  };

  CLI::App* c_derive = app.add_subcommand("derive", "iterated left-invariant derivative");
  add_common(c_derive);
  c_derive->add_option("--alpha", alpha_str, "multi-index, comma separated");
  c_derive->add_option("--method", method_name, "auto, exact, cauchy-quadrature, finite-difference");
  c_derive->add_option("--nodes", nodes, "quadrature nodes per circle");
  c_derive->add_option("--quad-radius", qradius, "quadrature circle radius");
  c_derive->add_option("--fd-step", fd_step, "finite-difference base step");

  CLI::App* c_taylor = app.add_subcommand("taylor", "dense Taylor data at a point");
  add_common(c_taylor);
  c_taylor->add_option("--order", order, "expansion order N");
  c_taylor->add_option("--method", method_name, "derivative method");
  c_taylor->add_option("--eval", eval_str, "also evaluate at these coordinates");
  c_taylor->add_option("--shift", shift_str, "recenter by these coordinates");
  c_taylor->add_option("--shift-order", shift_order, "prefix order K of the shift");

  CLI::App* c_majorant = app.add_subcommand("majorant", "majorant coefficients of Taylor data");
  add_common(c_majorant);
  c_majorant->add_option("--order", order, "expansion order N");
  c_majorant->add_option("--weight", weight, "weight exponent R");
  c_majorant->add_option("--radius", radius, "also evaluate the majorant at this radius");
  c_majorant->add_option("--method", method_name, "derivative method");

  CLI::App* c_seminorm = app.add_subcommand("seminorm", "seminorm q_r at the identity");
  add_common(c_seminorm);
  c_seminorm->add_option("--radius", radius, "seminorm radius r");
  c_seminorm->add_option("--order", order, "truncation order N");
  c_seminorm->add_option("--method", method_name, "derivative method");

  CLI::App* c_entire = app.add_subcommand("entire-check", "entirety heuristic of the majorant");
  add_common(c_entire);
  c_entire->add_option("--order", order, "majorant order (>= 10)");
  c_entire->add_option("--method", method_name, "derivative method");

  CLI::App* c_riemann = app.add_subcommand("riemann", "lengths, distance bounds, ball membership");
  c_riemann->add_option("--group", group, "registry group name");
  c_riemann->add_option("--gram", gram_json, "Gram matrix as JSON (inline or @file)");
  CLI::App* r_len = c_riemann->add_subcommand("length", "curve length of a sampled path");
  r_len->add_option("--segments", segments, "exp segments 'x,y;u,v'");
  r_len->add_option("--path", path_json, "path JSON (inline or @file)");
  r_len->add_option("--per-segment", per_segment, "samples per segment");
  CLI::App* r_dist = c_riemann->add_subcommand("distance", "certified distance upper bound");
  r_dist->add_option("--from", from_str, "start point exp coordinates");
  r_dist->add_option("--to", to_str, "end point exp coordinates");
  CLI::App* r_ball = c_riemann->add_subcommand("ball", "one-sided ball membership");
  r_ball->add_option("--center", center_str, "ball center exp coordinates");
  r_ball->add_option("--point", point_str, "query point exp coordinates");
  r_ball->add_option("--radius", radius, "ball radius");

  CLI::App* c_cauchy = app.add_subcommand("cauchy-check", "derivative and norm inequalities");
  add_common(c_cauchy);
  c_cauchy->add_option("--flavor", flavor, "operator, riemannian, exp-norm, restriction")
      ->check(CLI::IsMember({"operator", "riemannian", "exp-norm", "restriction"}));
  c_cauchy->add_option("--xi0", xi0_str, "K0 offset coordinates");
  c_cauchy->add_option("--dirs", dirs_str, "directions 'v1;v2;...'");
  c_cauchy->add_option("--radius", radius, "estimate radius r");
  c_cauchy->add_option("--order", order, "restriction truncation order");
  c_cauchy->add_option("--gram", gram_json, "Gram matrix for the riemannian flavor");

  CLI::App* c_steiner = app.add_subcommand("steiner", "Steiner chain along a path");
  c_steiner->add_option("--group", group, "registry group name");
  c_steiner->add_option("--segments", segments, "exp segments 'x,y;u,v'");
  c_steiner->add_option("--path", path_json, "path JSON (inline or @file)");
  c_steiner->add_option("--radius", radius, "ball radius");
  c_steiner->add_option("--margin", margin, "acceptance margin");
  c_steiner->add_option("--per-segment", per_segment, "samples per segment");

  CLI::App* c_continue = app.add_subcommand("continue", "continue Taylor data along a path");
  add_common(c_continue);
  c_continue->add_option("--segments", segments, "partner-group exp segments");
  c_continue->add_option("--path", path_json, "partner-group path JSON");
  c_continue->add_option("--order", order, "carried Taylor order N");
  c_continue->add_option("--shift-order", shift_order, "recentering order K");
  c_continue->add_option("--chain-radius", chain_radius, "Steiner radius (0: default)");
  c_continue->add_option("--per-segment", per_segment, "samples per segment");

  CLI::App* c_extend = app.add_subcommand("extend", "extend a field to a complexified target");
  add_common(c_extend);
  c_extend->add_option("--target", target_str, "partner-group target exp coordinates, factors by |");
  c_extend->add_option("--target-json", path_json, "partner-group target matrix JSON");
  c_extend->add_option("--order", order, "carried Taylor order N");
  c_extend->add_option("--shift-order", shift_order, "recentering order K");
  c_extend->add_option("--chain-radius", chain_radius, "Steiner radius (0: default)");

  CLI::App* c_verify = app.add_subcommand("verify-extension", "compare against the direct counterpart");
  add_common(c_verify);
  c_verify->add_option("--target", target_str, "partner targets 'x,..|y,..;x2,..'");
  c_verify->add_option("--order-cmp", order_cmp, "Taylor identity comparison order");
  c_verify->add_option("--samples", nodes, "number of sample points");
  c_verify->add_option("--tol-value", tol_value, "value agreement tolerance");
  c_verify->add_option("--tol-coeff", tol_coeff, "Taylor identity tolerance");

  CLI::App* c_laurent = app.add_subcommand("laurent", "circle-group Laurent tools");
  add_common(c_laurent);
  c_laurent->add_option("--mode", mode, "coefficients, identity, seminorm, extend")
      ->check(CLI::IsMember({"coefficients", "identity", "seminorm", "extend"}));
  c_laurent->add_option("--n-neg", n_neg, "negative range");
  c_laurent->add_option("--n-pos", n_pos, "positive range");
  c_laurent->add_option("--nodes", nodes, "trapezoid node count");
  c_laurent->add_option("--max-order", max_order, "identity max derivative order");
  c_laurent->add_option("--radius", radius, "seminorm radius");
  c_laurent->add_option("--order", order, "seminorm / extension series order");
  c_laurent->add_option("--target-complex", target_complex, "extension target 're,im'");

  CLI::App* c_suite = app.add_subcommand("suite", "run the acceptance criteria, emit JSONL");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int exit_code = 0;
  try {
    if (!config_path.empty()) {
      json cfg = read_json_arg("@" + config_path);
      group = cfg.value("group", group);
      field_spec = cfg.value("field", field_spec);
      method_name = cfg.value("method", method_name);
      if (cfg.contains("order")) order = cfg["order"].get<int>();
      if (cfg.contains("radius")) radius = cfg["radius"].get<double>();
      if (cfg.contains("threads")) threads = cfg["threads"].get<int>();
    }
    if (threads < 1) throw lt::config_error("--threads must be >= 1");
    lt::set_thread_count(threads);
    Output out{out_path, format};

    if (app.got_subcommand(c_suite)) {
      std::vector<lt::CriterionResult> results = lt::run_suite();
      out.emit_raw(lt::suite_jsonl(results));
      for (const auto& r : results)
        if (!r.pass) exit_code = 1;
      return exit_code;
    }

    const lt::GroupModel& g = lt::registry_get(group);

    if (app.got_subcommand(c_derive)) {
      lt::Field f = lt::field_from_name(g, field_spec);
      lt::MultiIndex alpha = parse_alpha(alpha_str);
      lt::DerivMethod m = build_method(method_name, nodes, qradius, fd_step, f, g);
      lt::cd v = lt::lie_derivative(f, g, parse_point(g, at), alpha, m);
      json doc{{"op", "derive"}, {"group", g.name},     {"field", f.name},
               {"alpha", alpha}, {"method", m.name()},  {"value", lt::to_json(v)}};
      out.emit(doc, "L" + lt::multiindex_str(alpha) + " " + f.name + " = " +
                        lt::format_complex(v));
    } else if (app.got_subcommand(c_taylor)) {
      lt::Field f = lt::field_from_name(g, field_spec);
      int N = order < 0 ? lt::default_taylor_order(g.d) : order;
      lt::DerivMethod m = build_method(method_name, nodes, qradius, fd_step, f, g);
      lt::TaylorData t = lt::taylor_data(f, g, parse_point(g, at), N, m);
      if (!shift_str.empty())
        t = lt::shift_taylor_data(t, g, parse_coords(shift_str, g.d), N - shift_order, shift_order);
      json doc = lt::to_json(t);
      if (!eval_str.empty())
        doc["eval"] = lt::to_json(lt::taylor_eval(t, parse_coords(eval_str, g.d)));
      out.emit(doc, "taylor data: " + f.name + " order " + std::to_string(t.order));
    } else if (app.got_subcommand(c_majorant)) {
      lt::Field f = lt::field_from_name(g, field_spec);
      int N = order < 0 ? lt::default_taylor_order(g.d) : order;
      lt::DerivMethod m = build_method(method_name, nodes, qradius, fd_step, f, g);
      lt::TaylorData t = lt::taylor_data(f, g, parse_point(g, at), N, m);
      lt::MajorantSeries maj = lt::majorant_coefficients(t, weight);
      json doc = lt::to_json(maj);
      lt::MajorantValue v = lt::majorant_eval(maj, radius);
      doc["eval"] = lt::to_json(v);
      doc["eval_radius"] = radius;
      out.emit(doc, "majorant(" + std::to_string(radius) + ") = " + lt::format_double(v.value));
    } else if (app.got_subcommand(c_seminorm)) {
      lt::Field f = lt::field_from_name(g, field_spec);
      int N = order < 0 ? lt::default_taylor_order(g.d) : order;
      lt::DerivMethod m = build_method(method_name, nodes, qradius, fd_step, f, g);
      lt::MajorantValue v = lt::seminorm_q(f, g, radius, N, m);
      json doc{{"op", "seminorm"}, {"group", g.name},  {"field", f.name},
               {"radius", radius}, {"order", N},       {"value", v.value},
               {"tail", v.tail},   {"tail_kind", v.tail_kind}};
      out.emit(doc, "q_" + lt::format_double(radius) + "(" + f.name + ") = " +
                        lt::format_double(v.value));
    } else if (app.got_subcommand(c_entire)) {
      lt::Field f = lt::field_from_name(g, field_spec);
      int N = order < 0 ? std::max(12, lt::default_taylor_order(g.d)) : order;
      lt::DerivMethod m = build_method(method_name, nodes, qradius, fd_step, f, g);
      lt::TaylorData t = lt::taylor_data(f, g, parse_point(g, at), N, m);
      lt::EntiretyVerdict v = lt::entirety_heuristic(lt::majorant_coefficients(t, 0));
      out.emit(lt::to_json(v), f.name + ": " + v.verdict);
    } else if (app.got_subcommand(c_riemann)) {
      lt::RMat gram;
      if (!gram_json.empty()) {
        json jm = read_json_arg(gram_json);
        gram = lt::RMat(g.d, g.d);
        for (int r = 0; r < g.d; ++r)
          for (int c = 0; c < g.d; ++c) gram(r, c) = jm.at(size_t(r)).at(size_t(c)).get<double>();
      }
      lt::MetricModel metric = lt::make_metric(g, gram);
      if (c_riemann->got_subcommand("length")) {
        lt::GroupPath p = path_from_spec(g, segments, path_json, per_segment);
        double len = lt::curve_length(g, metric, p);
        out.emit(json{{"op", "length"}, {"group", g.name}, {"value", len}},
                 "length = " + lt::format_double(len));
      } else if (c_riemann->got_subcommand("distance")) {
        lt::DistanceBound b =
            lt::distance_upper_bound(g, metric, parse_point(g, from_str), parse_point(g, to_str));
        out.emit(lt::to_json(b), b.unbounded ? "unbounded" : "d <= " + lt::format_double(b.value));
      } else if (c_riemann->got_subcommand("ball")) {
        lt::BallVerdict v = lt::ball_membership_upper(g, metric, parse_point(g, point_str),
                                                      parse_point(g, center_str), radius);
        out.emit(lt::to_json(v), v.verdict);
      } else {
        throw lt::config_error("riemann needs a mode: length, distance, or ball");
      }
    } else if (app.got_subcommand(c_cauchy)) {
      if (flavor == "exp-norm") {
        lt::CauchyReport r = lt::exp_norm_check(g, parse_coords(xi0_str, g.d));
        out.emit(lt::to_json(r), std::string("exp-norm ") + (r.pass ? "pass" : "FAIL"));
        if (!r.pass) exit_code = 1;
      } else if (flavor == "restriction") {
        lt::Field f = lt::field_from_name(g, field_spec);
        int N = order < 0 ? 20 : order;
        lt::RestrictionReport r =
            lt::restriction_bound_check(f, g, parse_point(g, at), radius, N, seed);
        out.emit(lt::to_json(r), std::string("restriction ") +
                                     (r.forward_pass && r.reverse_pass ? "pass" : "FAIL"));
        if (!(r.forward_pass && r.reverse_pass)) exit_code = 1;
      } else {
        lt::Field f = lt::field_from_name(g, field_spec);
        lt::RVec xi0 = xi0_str.empty() ? lt::RVec(lt::RVec::Zero(g.d)) : parse_coords(xi0_str, g.d);
        std::vector<lt::RVec> dirs = parse_vec_list(dirs_str, g.d);
        lt::CauchyReport r;
        if (flavor == "riemannian") {
          lt::MetricModel metric = lt::make_metric(g);
          r = lt::cauchy_check_riemannian(f, g, metric, parse_point(g, at), xi0, dirs, radius);
        } else {
          r = lt::cauchy_check_operator(f, g, parse_point(g, at), xi0, dirs, radius);
        }
        out.emit(lt::to_json(r), r.check + " " + (r.pass ? "pass" : "FAIL") + ", slack " +
                                     lt::format_double(r.slack));
        if (!r.pass) exit_code = 1;
      }
    } else if (app.got_subcommand(c_steiner)) {
      lt::MetricModel metric = lt::make_metric(g);
      lt::GroupPath p = path_from_spec(g, segments, path_json, per_segment);
      lt::SteinerChain chain = lt::steiner_chain(g, metric, p, radius, margin);
      out.emit(lt::to_json(chain),
               "chain with " + std::to_string(chain.centers.size() - 1) + " steps");
    } else if (app.got_subcommand(c_continue)) {
      lt::Field f = lt::field_from_name(g, field_spec);
      if (!g.complexification) throw lt::config_error(g.name + " has no complexification partner");
      const lt::GroupModel& partner = lt::registry_get(g.complexification->partner);
      lt::GroupPath p = path_from_spec(partner, segments, path_json, per_segment);
      lt::ContinuationOptions opt;
      opt.order = order < 0 ? 8 : order;
      opt.shift_order = shift_order;
      opt.chain_radius = chain_radius;
      opt.per_segment = per_segment;
      lt::ContinuationState st = lt::continue_along_path(f, g, p, opt);
      json doc = lt::to_json(st);
      doc["chain"].erase("centers");  // keep the document small
      out.emit(doc, "continued value " + lt::format_complex(st.value));
    } else if (app.got_subcommand(c_extend)) {
      lt::Field f = lt::field_from_name(g, field_spec);
      if (!g.complexification) throw lt::config_error(g.name + " has no complexification partner");
      const lt::GroupModel& partner = lt::registry_get(g.complexification->partner);
      lt::CMat target =
          path_json.empty() ? parse_point(partner, target_str) : lt::cmat_from_json(read_json_arg(path_json));
      lt::ContinuationOptions opt;
      opt.order = order < 0 ? 8 : order;
      opt.shift_order = shift_order;
      opt.chain_radius = chain_radius;
      lt::ExtensionResult r = lt::extend_value(f, g, target, nullptr, opt);
      out.emit(lt::to_json(r), "extended value " + lt::format_complex(r.value));
    } else if (app.got_subcommand(c_verify)) {
      lt::Field f = lt::field_from_name(g, field_spec);
      if (!g.complexification) throw lt::config_error(g.name + " has no complexification partner");
      const lt::GroupModel& partner = lt::registry_get(g.complexification->partner);
      std::vector<lt::CMat> targets;
      if (!target_str.empty()) {
        std::stringstream ss(target_str);
        std::string item;
        while (std::getline(ss, item, ';'))
          if (!item.empty()) targets.push_back(parse_point(partner, item));
      }
      lt::VerifyExtensionReport r = lt::verify_extension(f, g, targets, order_cmp, nodes, seed);
      json doc = lt::to_json(r);
      bool pass = r.max_coeff_deviation <= tol_coeff && r.max_value_deviation <= tol_value;
      doc["pass"] = pass;
      out.emit(doc, std::string("verify-extension ") + (pass ? "pass" : "FAIL"));
      if (!pass) exit_code = 1;
    } else if (app.got_subcommand(c_laurent)) {
      lt::Field f = lt::field_from_name(g, field_spec);
      std::string m = mode.empty() ? "coefficients" : mode;
      if (m == "extend") {
        if (target_complex.empty()) throw lt::config_error("laurent extend needs --target-complex");
        int N = order < 0 ? 48 : order;
        lt::LaurentExtendResult r = lt::laurent_extend(f, g, parse_complex(target_complex), N);
        out.emit(lt::to_json(r), "extended value " + lt::format_complex(r.value));
      } else {
        lt::LaurentData L =
            lt::laurent_coefficients(f, g, n_neg, n_pos, c_laurent->count("--nodes") ? nodes : 0);
        if (m == "coefficients") {
          out.emit(lt::to_json(L), f.name + ": " + std::to_string(L.a.size()) + " coefficients");
        } else if (m == "identity") {
          lt::LaurentIdentityReport r = lt::laurent_lie_taylor_check(f, g, max_order, L);
          json doc = lt::to_json(r);
          bool pass = r.max_deviation <= 1e-9;
          doc["pass"] = pass;
          out.emit(doc, std::string("laurent identity ") + (pass ? "pass" : "FAIL"));
          if (!pass) exit_code = 1;
        } else {
          int N = order < 0 ? 40 : order;
          lt::LaurentSeminormReport r = lt::laurent_seminorm_bound(f, g, radius, N, L);
          out.emit(lt::to_json(r), std::string("laurent seminorm bound ") +
                                       (r.pass ? "pass" : "FAIL"));
          if (!r.pass) exit_code = 1;
        }
      }
    }
  } catch (const lt::refusal_error& e) {
    std::cerr << json{{"error", "refusal"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const lt::config_error& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << json{{"error", "domain"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", "invalid-argument"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "config"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return exit_code;
}
