#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

// End-to-end runs of the installed binary: exit codes, output schemas,
// byte-for-byte determinism. Paths come in from CMake.

#ifndef LEFF_CLI_PATH
#error "LEFF_CLI_PATH must be defined"
#endif
#ifndef LEFF_DATA_DIR
#error "LEFF_DATA_DIR must be defined"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(LEFF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return RunResult{WEXITSTATUS(status), out};
}

std::string data(const std::string& name) { return std::string(LEFF_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("phenome of the merged flagship description") {
  const RunResult r = run_cli("phenome " + data("s1s2.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"phenome\":[\"A\",\"B\"]}\n");
}

TEST_CASE("merge of the two threshold systems equals the combined description") {
  const RunResult merged = run_cli("merge " + data("s1.json") + " " + data("s2.json"));
  CHECK(merged.exit_code == 0);
  const RunResult direct = run_cli("phenome " + data("s1.json"));
  CHECK(direct.out == "{\"phenome\":[]}\n");
  CHECK(merged.out.find("\"rules\"") != std::string::npos);
}

TEST_CASE("detect-effects reports the flagship witness pair") {
  const RunResult r = run_cli("detect-effects --exhaustive " + data("twonode-veil.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"sustains_effects\":true") != std::string::npos);
  CHECK(r.out.find("\"lhs\":[\"A\",\"B\"],\"rhs\":[\"A\"]") != std::string::npos);
}

TEST_CASE("check-commute passes on the delayed flagship rules") {
  const RunResult r = run_cli("check-commute " + data("timed.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"pass\":true") != std::string::npos);
  CHECK(r.out.find("\"lhs\":[\"A\",\"B\"]") != std::string::npos);
}

TEST_CASE("check-poset and factor on the diamond") {
  const RunResult p = run_cli("check-poset " + data("diamond.json"));
  CHECK(p.exit_code == 0);
  CHECK(p.out.find("\"is_poset\":true") != std::string::npos);
  CHECK(p.out.find("\"finitely_cocomplete\":true") != std::string::npos);

  const RunResult f = run_cli("factor " + data("indicator-map.json"));
  CHECK(f.exit_code == 0);
  CHECK(f.out.find("\"is_veil_surjective_criterion\":true") != std::string::npos);
}

TEST_CASE("lift emits matching effect flags") {
  const RunResult r = run_cli("lift " + data("indicator-map.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"is_veil\":true") != std::string::npos);
  CHECK(r.out.find("\"effect\":true,\"lifted_effect\":true") == std::string::npos);
}

TEST_CASE("factorize splits a stock veil") {
  const RunResult r = run_cli("factorize " + data("twonode-veil.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"pi_surjective\":true") != std::string::npos);
  CHECK(r.out.find("\"iota_injective\":true") != std::string::npos);
  CHECK(r.out.find("\"recomposes\":true") != std::string::npos);
}

TEST_CASE("simulate honors the initial set") {
  const RunResult r = run_cli("simulate " + data("s1.json") + " --initial A --trace");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"final\":[\"A\",\"B\"]") != std::string::npos);
  CHECK(r.out.find("\"converged_at\":1") != std::string::npos);
}

TEST_CASE("export-dot renders posets and traces") {
  const RunResult p = run_cli("export-dot " + data("diamond.json"));
  CHECK(p.exit_code == 0);
  CHECK(p.out.find("digraph poset") == 0);

  const RunResult t = run_cli("export-dot " + data("s1s2.json"));
  CHECK(t.exit_code == 0);
  CHECK(t.out.find("digraph cascade") == 0);
}

TEST_CASE("simulate-timed stabilizes and reports the colimit") {
  const RunResult r = run_cli("simulate-timed " + data("timed.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"colim\":[\"A\",\"B\"]") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2 and structured JSON") {
  const RunResult r = run_cli("check-poset " + data("broken.json"));
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("\"error\"") != std::string::npos);
  CHECK(r.out.find("\"kind\":\"SchemaError\"") != std::string::npos);

  const RunResult missing = run_cli("phenome /nonexistent.json");
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.find("ParseError") != std::string::npos);

  const RunResult budget =
      run_cli("--budget 3 detect-effects --exhaustive " + data("twonode-veil.json"));
  CHECK(budget.exit_code == 2);
  CHECK(budget.out.find("BudgetExceeded") != std::string::npos);
}

TEST_CASE("identical configuration gives byte-identical output") {
  const std::string cmd = "--seed 7 detect-effects --samples 50 " + data("twonode-veil.json");
  const RunResult a = run_cli(cmd);
  const RunResult b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}
