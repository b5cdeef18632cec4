// Golden tests for the command-line tool: every subcommand runs twice on the
// fixture corpus, output bytes must match run to run, and the exit contract
// (0 yes / 1 no / 2 error) must hold.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

// Runs twice and asserts byte-identical output plus the expected exit code.
std::string golden(const std::string& args, int expect_exit) {
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.exit_code == expect_exit);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
  CHECK(a.out.back() == '\n');
  return a.out;
}

}  // namespace

TEST_CASE("norm and member") {
  std::string out = golden("norm " + fx("s_two.json") + " " + fx("f_simple.json"), 0);
  CHECK(out.find("\"value\":") != std::string::npos);
  golden("norm " + fx("s_two.json") + " " + fx("f_zero.json"), 0);
  std::string m = golden("member " + fx("s_two.json") + " " + fx("f_simple.json"), 0);
  CHECK(m.find("\"member\":true") != std::string::npos);
}

TEST_CASE("rn exit codes follow boundedness") {
  std::string bounded = golden("rn " + fx("s_geo.json") + " " + fx("s_geo3.json"), 0);
  CHECK(bounded.find("\"bounded\":true") != std::string::npos);
  std::string unbounded = golden("rn " + fx("s_geo3.json") + " " + fx("s_geo.json"), 1);
  CHECK(unbounded.find("\"bounded\":false") != std::string::npos);
  CHECK(unbounded.find("\"index\":36") != std::string::npos);
}

TEST_CASE("include and equal") {
  golden("include " + fx("s_geo.json") + " " + fx("s_geo3.json"), 0);
  std::string ni = golden("include " + fx("s_geo3.json") + " " + fx("s_geo.json"), 1);
  CHECK(ni.find("\"witness_preview\"") != std::string::npos);
  std::string eq = golden("equal " + fx("s_two.json") + " " + fx("s_two_scaled.json"), 0);
  CHECK(eq.find("\"equal\":true") != std::string::npos);
  std::string ne = golden("equal " + fx("s_geo.json") + " " + fx("s_geo3.json"), 1);
  CHECK(ne.find("\"direction\":\"nu_not_in_mu\"") != std::string::npos);
}

TEST_CASE("passport extraction") {
  std::string out = golden("passport " + fx("s_two.json"), 0);
  CHECK(out.find("\"rows\"") != std::string::npos);
}

TEST_CASE("decide-iso: reflexive yes, ratio refusal, row mismatch") {
  std::string yes = golden("decide-iso " + fx("p.json") + " " + fx("p.json"), 0);
  CHECK(yes.find("\"decision\":\"yes\"") != std::string::npos);
  CHECK(yes.find("\"sup_ratios\":[1.0,1.0]") != std::string::npos);
  std::string no = golden("decide-iso " + fx("geo_half.json") + " " + fx("geo_third.json"), 1);
  CHECK(no.find("\"kind\":\"ratio_unbounded\"") != std::string::npos);
  CHECK(no.find("\"index\":36") != std::string::npos);
  std::string mm = golden("decide-iso " + fx("p.json") + " " + fx("p_rowmm.json"), 1);
  CHECK(mm.find("\"kind\":\"row_mismatch\"") != std::string::npos);
  golden("decide-iso " + fx("geo_half.json") + " " + fx("p_prefix.json"), 0);
}

TEST_CASE("build-iso") {
  std::string yes = golden("build-iso " + fx("p.json") + " " + fx("p_fin_b.json"), 0);
  CHECK(yes.find("\"equality_nu_gamma\":\"equal\"") != std::string::npos);
  CHECK(yes.find("\"gamma_total\":1.0") != std::string::npos);
  golden("build-iso " + fx("geo_half.json") + " " + fx("geo_third.json"), 1);
}

TEST_CASE("counterexample: space pair, ratio rule, and refusals") {
  std::string out = golden("counterexample " + fx("mu.json") + " " + fx("nu.json") + " --K 10", 0);
  CHECK(out.find("\"mu_partials\":[1.0,1.25,") != std::string::npos);
  CHECK(out.find("1.5497677311665408") != std::string::npos);
  std::string rule = golden(
      "counterexample " + fx("s_geo.json") + " --ratio " + fx("rule_linear.json") + " --K 10", 0);
  CHECK(rule.find("1.5497677311665408") != std::string::npos);
  // Bounded derivative: precondition failure.
  golden("counterexample " + fx("s_geo.json") + " " + fx("s_geo.json") + " --K 5", 2);
  // Mismatched algebras: input error.
  golden("counterexample " + fx("s_geo.json") + " " + fx("s_two.json") + " --K 5", 2);
}

TEST_CASE("verify-prop2 and verify-transport") {
  std::string p2 = golden(
      "verify-prop2 " + fx("p.json") + " " + fx("p_fin_b.json") + " --random 5 --seed 7", 0);
  CHECK(p2.find("\"max_discrepancy\":0.0") != std::string::npos);
  golden("verify-transport " + fx("p.json") + " " + fx("p_fin_b.json") + " --random 5 --seed 7",
         0);
  golden("verify-transport " + fx("geo_half.json") + " " + fx("p_prefix.json") +
             " --random 5 --seed 3 --target pushforward",
         0);
  std::string tr = golden("verify-transport " + fx("geo_half.json") + " " + fx("p_prefix.json") +
                              " --random 5 --seed 3 --target gamma",
                          0);
  CHECK(tr.find("\"ok\":true") != std::string::npos);
}

TEST_CASE("schema violations and missing files exit 2") {
  golden("decide-iso " + fx("bad_tau.json") + " " + fx("p.json"), 2);
  std::string bad = run_cli("decide-iso " + fx("bad_tau.json") + " " + fx("p.json")).out;
  CHECK(bad.find("tau strictly increasing") != std::string::npos);
  RunResult missing = run_cli("norm " + fx("does_not_exist.json") + " " + fx("f_zero.json"));
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.find("IOError") != std::string::npos);
}

TEST_CASE("--rational forces exact mode") {
  // 0.25/0.75 atoms in exact mode produce rational passports.
  std::string out = golden("--rational passport " + fx("s_two.json"), 0);
  CHECK(out.find("\"num\"") != std::string::npos);
}
