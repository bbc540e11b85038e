// Acceptance gate: runs the verification suite through the CLI binary three
// times (twice single-threaded, once multi-threaded), checks the twelve
// reported criteria, and adds the thirteenth: the emitted JSONL must be
// byte-identical across runs and thread counts. One line per criterion.

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <vector>

using json = nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SuiteRun {
  int code = -1;
  std::string jsonl;
};

SuiteRun run_suite_cli(int threads, const std::string& tag) {
  std::string out = "acceptance_" + tag + ".jsonl";
  std::string cmd = std::string(LT_CLI_PATH) + " --threads " + std::to_string(threads) +
                    " suite >" + out + " 2>acceptance_" + tag + ".err";
  int status = std::system(cmd.c_str());
  SuiteRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.jsonl = slurp(out);
  std::remove(out.c_str());
  std::remove(("acceptance_" + tag + ".err").c_str());
  return r;
}

void print_line(int number, bool pass, const std::string& name) {
  std::printf("criterion %2d  %s  %s\n", number, pass ? "PASS" : "FAIL", name.c_str());
}

}  // namespace

int main() {
  unsigned hc = std::thread::hardware_concurrency();
  int mt = int(hc < 2 ? 2 : (hc > 8 ? 8 : hc));

  SuiteRun run1 = run_suite_cli(1, "run1");
  SuiteRun run2 = run_suite_cli(1, "run2");
  SuiteRun run3 = run_suite_cli(mt, "run3");

  if (run1.jsonl.empty()) {
    std::fprintf(stderr, "acceptance: suite produced no output (exit %d)\n", run1.code);
    return 1;
  }

  int failures = 0;
  std::vector<bool> seen(13, false);
  std::istringstream lines(run1.jsonl);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::exception& e) {
      std::fprintf(stderr, "acceptance: unparsable suite line: %s\n", e.what());
      ++failures;
      continue;
    }
    if (!doc.contains("criterion") || !doc.contains("name") || !doc.contains("pass") ||
        !doc.contains("details")) {
      std::fprintf(stderr, "acceptance: suite line missing keys: %s\n", line.c_str());
      ++failures;
      continue;
    }
    int number = doc["criterion"].get<int>();
    bool pass = doc["pass"].get<bool>();
    print_line(number, pass, doc["name"].get<std::string>());
    if (number >= 1 && number <= 12) seen[size_t(number)] = true;
    if (!pass) ++failures;
  }
  for (int n = 1; n <= 12; ++n) {
    if (!seen[size_t(n)]) {
      print_line(n, false, "criterion missing from suite output");
      ++failures;
    }
  }

  bool deterministic = run1.jsonl == run2.jsonl && run1.jsonl == run3.jsonl;
  print_line(13, deterministic,
             "byte-identical JSONL across repeated runs and 1 vs " + std::to_string(mt) +
                 " worker threads");
  if (!deterministic) ++failures;

  std::printf("acceptance: %d/13 criteria pass\n", 13 - failures);
  return failures == 0 ? 0 : 1;
}
