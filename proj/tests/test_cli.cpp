#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using json = nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Spawns the installed binary, capturing both streams and the exit code.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string so = "cli_stdout_" + std::to_string(counter) + ".tmp";
  std::string se = "cli_stderr_" + std::to_string(counter) + ".tmp";
  ++counter;
  std::string cmd = std::string(LT_CLI_PATH) + " " + args + " >" + so + " 2>" + se;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(so);
  r.err = slurp(se);
  std::remove(so.c_str());
  std::remove(se.c_str());
  return r;
}

// Structural subset of JSON Schema: type, required, properties, items.
bool validate(const json& schema, const json& doc, std::string* why) {
  if (schema.contains("type")) {
    const std::string t = schema["type"].get<std::string>();
    bool ok = (t == "object" && doc.is_object()) || (t == "array" && doc.is_array()) ||
              (t == "string" && doc.is_string()) || (t == "boolean" && doc.is_boolean()) ||
              (t == "integer" && doc.is_number_integer()) || (t == "number" && doc.is_number());
    if (!ok) {
      *why = "expected type " + t + ", got " + std::string(doc.type_name());
      return false;
    }
  }
  if (schema.contains("required")) {
    for (const json& k : schema["required"])
      if (!doc.contains(k.get<std::string>())) {
        *why = "missing required key " + k.get<std::string>();
        return false;
      }
  }
  if (schema.contains("properties") && doc.is_object()) {
    for (const auto& [k, sub] : schema["properties"].items())
      if (doc.contains(k) && !validate(sub, doc.at(k), why)) {
        *why = k + ": " + *why;
        return false;
      }
  }
  if (schema.contains("items") && doc.is_array()) {
    for (const json& el : doc)
      if (!validate(schema["items"], el, why)) {
        *why = "item: " + *why;
        return false;
      }
  }
  return true;
}

void check_schema(const std::string& name, const json& doc) {
  std::string path = std::string(LT_SCHEMA_DIR) + "/" + name + ".schema.json";
  std::ifstream in(path);
  REQUIRE(in.good());
  json schema = json::parse(in);
  std::string why;
  bool ok = validate(schema, doc, &why);
  INFO(name << ": " << why);
  CHECK(ok);
}

constexpr double kTau = 6.283185307179586;

}  // namespace

TEST_CASE("cli derive emits the oracle value as schema-valid json") {
  RunResult r = run_cli("derive --group SL2R --field entry:1,1 --alpha 2,3 --method exact");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  check_schema("derive", doc);
  CHECK(doc["group"] == "SL2R");
  CHECK(doc["field"] == "entry11");
  CHECK(doc["method"] == "exact");
  CHECK(doc["value"][0].get<double>() == Catch::Approx(1.0).margin(1e-12));
  CHECK(doc["value"][1].get<double>() == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("cli derive on the circle returns 2 pi i") {
  RunResult r = run_cli("derive --group U1 --field char:1 --alpha 1");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["value"][0].get<double>() == Catch::Approx(0.0).margin(1e-10));
  CHECK(doc["value"][1].get<double>() == Catch::Approx(kTau).epsilon(1e-10));

  RunResult t = run_cli("--format text derive --group U1 --field char:1 --alpha 1");
  REQUIRE(t.code == 0);
  CHECK(t.out.find("char1") != std::string::npos);
  CHECK_THROWS(json::parse(t.out));
}

TEST_CASE("cli exit codes separate config errors from refusals and failures") {
  RunResult bad_group = run_cli("derive --group SO3 --field trace --alpha 1");
  CHECK(bad_group.code == 2);
  json err = json::parse(bad_group.err);
  check_schema("error", err);
  CHECK(err["error"] == "config");

  RunResult bad_alpha = run_cli("derive --group U1 --field char:1 --alpha 4");
  CHECK(bad_alpha.code == 2);
  CHECK(json::parse(bad_alpha.err)["error"] == "invalid-argument");

  RunResult refusal = run_cli(
      "derive --group R1 --field rational --alpha 1,1,1,1,1,1,1,1,1 --method finite-difference");
  CHECK(refusal.code == 3);
  json rerr = json::parse(refusal.err);
  check_schema("error", rerr);
  CHECK(rerr["error"] == "refusal");

  RunResult flavor_refusal =
      run_cli("cauchy-check --group SL2R --field entry:1,1 --dirs 1,0,0 --radius 1");
  CHECK(flavor_refusal.code == 3);

  RunResult fail = run_cli(
      "verify-extension --group SL2R --field entry:1,1 --target 0,0,0,0.4,0,0 "
      "--samples 3 --order-cmp 1 --tol-value 1e-30");
  CHECK(fail.code == 1);
  json vdoc = json::parse(fail.out);
  check_schema("verify_extension", vdoc);
  CHECK(vdoc["pass"] == false);

  RunResult bad_format = run_cli("--format yaml derive --group U1 --alpha 1");
  CHECK(bad_format.code == 2);
}

TEST_CASE("cli taylor evaluates and recenters") {
  RunResult r = run_cli("taylor --group SL2R --field entry:1,1 --order 6 --eval 0.1,0,0");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  check_schema("taylor", doc);
  CHECK(doc["order"] == 6);
  CHECK(doc["eval"][0].get<double>() == Catch::Approx(std::exp(0.1)).epsilon(1e-9));

  RunResult s = run_cli("taylor --group U1 --field char:1 --order 12 --shift 0.1 --shift-order 12");
  REQUIRE(s.code == 0);
  json sdoc = json::parse(s.out);
  CHECK(sdoc["order"] == 0);
  CHECK(sdoc["coefficients"][0][0][0].get<double>() ==
        Catch::Approx(std::cos(0.2 * 3.14159265358979324)).margin(1e-10));
  CHECK(sdoc["coefficients"][0][0][1].get<double>() ==
        Catch::Approx(std::sin(0.2 * 3.14159265358979324)).margin(1e-10));
}

TEST_CASE("cli seminorm writes to a file when asked") {
  std::string path = "cli_seminorm_result.tmp";
  RunResult r = run_cli("--out " + path + " seminorm --group U1 --field char:1 --radius 1 --order 40");
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  json doc = json::parse(slurp(path));
  std::remove(path.c_str());
  check_schema("seminorm", doc);
  CHECK(doc["value"].get<double>() == Catch::Approx(535.4916555247646).epsilon(1e-9));
}

TEST_CASE("cli majorant and entirety heuristics") {
  RunResult r = run_cli("majorant --group U1 --field char:1 --order 8 --radius 0.5");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  check_schema("majorant", doc);
  CHECK(doc["coefficients"][1].get<double>() == Catch::Approx(kTau).epsilon(1e-12));

  RunResult ent = run_cli("entire-check --group U1 --field char:1 --order 300");
  REQUIRE(ent.code == 0);
  json edoc = json::parse(ent.out);
  check_schema("entire", edoc);
  CHECK(edoc["verdict"] == "consistent-with-entire");

  RunResult rat = run_cli("entire-check --group R1 --field rational --order 40");
  REQUIRE(rat.code == 0);
  CHECK(json::parse(rat.out)["verdict"] == "not-entire");
}

TEST_CASE("cli riemann subcommands") {
  RunResult len = run_cli("riemann --group U1 length --segments 0.25");
  REQUIRE(len.code == 0);
  json ldoc = json::parse(len.out);
  check_schema("riemann_length", ldoc);
  CHECK(ldoc["value"].get<double>() == Catch::Approx(0.25).epsilon(1e-9));

  RunResult dist = run_cli("riemann --group U1 distance --from 0 --to 0.1");
  REQUIRE(dist.code == 0);
  json ddoc = json::parse(dist.out);
  check_schema("riemann_distance", ddoc);
  CHECK(ddoc["unbounded"] == false);
  CHECK(ddoc["value"].get<double>() == Catch::Approx(0.1).epsilon(1e-9));

  RunResult ball = run_cli("riemann --group U1 ball --center 0 --point 0.05 --radius 0.1");
  REQUIRE(ball.code == 0);
  json bdoc = json::parse(ball.out);
  check_schema("riemann_ball", bdoc);
  CHECK(bdoc["verdict"] == "inside");
}

TEST_CASE("cli cauchy-check flavors") {
  RunResult op = run_cli(
      "cauchy-check --group SL2C --field entry:1,1 --flavor operator --dirs 1,0,0,0,0,0 --radius 1");
  REQUIRE(op.code == 0);
  json odoc = json::parse(op.out);
  check_schema("cauchy", odoc);
  CHECK(odoc["lhs"].get<double>() == Catch::Approx(1.0).epsilon(1e-10));
  CHECK(odoc["rhs"].get<double>() == Catch::Approx(std::exp(1.0)).epsilon(1e-10));
  CHECK(odoc["pass"] == true);

  RunResult rm = run_cli(
      "cauchy-check --group SL2C --field entry:1,1 --flavor riemannian --dirs 1,0,0,0,0,0 --radius 0.5");
  REQUIRE(rm.code == 0);
  CHECK(json::parse(rm.out)["pass"] == true);

  RunResult en = run_cli("cauchy-check --group SL2R --flavor exp-norm --xi0 0.3,0,0");
  REQUIRE(en.code == 0);
  json endoc = json::parse(en.out);
  check_schema("cauchy", endoc);
  CHECK(endoc["check"] == "exp-norm");
  CHECK(endoc["pass"] == true);

  RunResult rs = run_cli(
      "cauchy-check --group Ctimes --field char:1 --flavor restriction --radius 0.1 --order 8");
  REQUIRE(rs.code == 0);
  json rdoc = json::parse(rs.out);
  check_schema("restriction", rdoc);
  CHECK(rdoc["forward_pass"] == true);
  CHECK(rdoc["reverse_pass"] == true);
}

TEST_CASE("cli steiner, continue, extend") {
  RunResult st = run_cli("steiner --group U1 --segments 1 --radius 0.25 --margin 0");
  REQUIRE(st.code == 0);
  json sdoc = json::parse(st.out);
  check_schema("steiner", sdoc);
  CHECK(sdoc["steps"] == 4);
  CHECK(sdoc["times"].size() == 5);

  RunResult co = run_cli("continue --group U1 --field char:1 --segments 0,0.3");
  REQUIRE(co.code == 0);
  json cdoc = json::parse(co.out);
  check_schema("continue", cdoc);
  CHECK(!cdoc["chain"].contains("centers"));
  CHECK(cdoc["value"][0].get<double>() ==
        Catch::Approx(std::exp(-0.3 * kTau)).epsilon(1e-8));

  RunResult ex = run_cli("extend --group SL2R --field entry:1,1 --target 0,0,0,0.4,0,0");
  REQUIRE(ex.code == 0);
  json edoc = json::parse(ex.out);
  check_schema("extend", edoc);
  CHECK(edoc["value"][0].get<double>() == Catch::Approx(std::cos(0.4)).margin(1e-7));
  CHECK(edoc["value"][1].get<double>() == Catch::Approx(std::sin(0.4)).margin(1e-7));

  RunResult ej = run_cli(
      "extend --group SU2 --field trace --target-json "
      "'{\"rows\":2,\"cols\":2,\"data\":[[2,0],[0,0],[0,0],[0.5,0]]}'");
  REQUIRE(ej.code == 0);
  json jdoc = json::parse(ej.out);
  CHECK(jdoc["value"][0].get<double>() == Catch::Approx(2.5).margin(1e-6));
}

TEST_CASE("cli laurent modes") {
  RunResult co = run_cli("laurent --group U1 --field trigpoly --mode coefficients --n-neg 2 --n-pos 3");
  REQUIRE(co.code == 0);
  json cdoc = json::parse(co.out);
  check_schema("laurent_coefficients", cdoc);
  // a_{-1} sits at index n_neg - 1 = 1.
  CHECK(cdoc["coefficients"][1][0].get<double>() == Catch::Approx(2.0).margin(1e-12));

  RunResult id = run_cli("laurent --group U1 --field trigpoly --mode identity --n-neg 2 --n-pos 3 --max-order 3");
  REQUIRE(id.code == 0);
  json idoc = json::parse(id.out);
  check_schema("laurent_identity", idoc);
  CHECK(idoc["pass"] == true);

  RunResult sm = run_cli(
      "laurent --group U1 --field trigpoly --mode seminorm --n-neg 2 --n-pos 3 --radius 0.5 --order 30");
  REQUIRE(sm.code == 0);
  json smdoc = json::parse(sm.out);
  check_schema("laurent_seminorm", smdoc);
  CHECK(smdoc["pass"] == true);

  RunResult ex = run_cli("laurent --group U1 --field trigpoly --mode extend --target-complex 0,1.5");
  REQUIRE(ex.code == 0);
  json edoc = json::parse(ex.out);
  check_schema("laurent_extend", edoc);
  CHECK(edoc["value"][0].get<double>() == Catch::Approx(0.75).margin(1e-8));
  CHECK(edoc["value"][1].get<double>() == Catch::Approx(-4.0 / 3.0).margin(1e-8));

  RunResult notarget = run_cli("laurent --group U1 --field trigpoly --mode extend");
  CHECK(notarget.code == 2);
}

TEST_CASE("cli config file supplies defaults") {
  std::string cfg = "cli_config.tmp";
  {
    std::ofstream out(cfg);
    out << "{\"group\": \"U1\", \"field\": \"char:2\"}\n";
  }
  RunResult r = run_cli("--config " + cfg + " derive --alpha 1");
  std::remove(cfg.c_str());
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["field"] == "char2");
  CHECK(doc["value"][1].get<double>() == Catch::Approx(2.0 * kTau).epsilon(1e-10));
}

TEST_CASE("cli output is byte-stable across runs and thread counts") {
  std::string args = "majorant --group SL2R --field entry:1,1 --order 8 --radius 0.5";
  RunResult a = run_cli("--threads 1 " + args);
  RunResult b = run_cli("--threads 1 " + args);
  RunResult c = run_cli("--threads 4 " + args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);

  RunResult zero = run_cli("--threads 0 " + args);
  CHECK(zero.code == 2);
}

TEST_CASE("cli help lists the subcommands") {
  RunResult r = run_cli("--help");
  CHECK(r.code == 0);
  CHECK(r.out.find("derive") != std::string::npos);
  CHECK(r.out.find("laurent") != std::string::npos);
}
