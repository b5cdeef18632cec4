// Command-line surface over the logiso C API: parses measure-space and
// passport descriptions, runs the decision procedures and constructions, and
// prints audit-grade JSON verdicts on standard output.
//
// Exit contract: 0 = decision yes / computation succeeded, 1 = decision no
// (the verdict is still printed), 2 = input or usage error.

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "logiso.h"

namespace {

int fail_io(const std::string& path, const std::string& why) {
  std::printf(
      "{\"error\":{\"code\":\"IOError\",\"message\":\"%s\",\"path\":\"%s\"},"
      "\"schema\":\"logiso/error/1\"}\n",
      why.c_str(), path.c_str());
  return 2;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { logiso_free(s); }
};

struct SpaceGuard {
  logiso_space* s = nullptr;
  ~SpaceGuard() { logiso_space_release(s); }
};

struct PassportGuard {
  logiso_passport* p = nullptr;
  ~PassportGuard() { logiso_passport_release(p); }
};

int print_result(logiso_status st, const char* json) {
  if (json) std::printf("%s\n", json);
  return static_cast<int>(st);
}

int load_space(const std::string& path, bool rational, SpaceGuard& out) {
  std::string text;
  if (!read_file(path, text)) return fail_io(path, "cannot read file");
  StringGuard err;
  if (logiso_space_parse(text.c_str(), rational ? 1 : 0, &out.s, &err.s) != LOGISO_OK) {
    if (err.s) std::printf("%s\n", err.s);
    return 2;
  }
  return 0;
}

int load_passport(const std::string& path, bool rational, PassportGuard& out) {
  std::string text;
  if (!read_file(path, text)) return fail_io(path, "cannot read file");
  StringGuard err;
  if (logiso_passport_parse(text.c_str(), rational ? 1 : 0, &out.p, &err.s) != LOGISO_OK) {
    if (err.s) std::printf("%s\n", err.s);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures for algebras of log-integrable functions"};
  app.require_subcommand(1);
  bool rational = false;
  app.add_flag("--rational", rational,
               "treat decimal literals as exact binary rationals (exact mode)");

  std::string path_a, path_b, path_fn, path_ratio, path_pairing;
  std::uint64_t K = 10;
  std::uint32_t random_count = 0;
  std::uint64_t seed = 1;
  std::string target = "gamma";

  auto* c_norm = app.add_subcommand("norm", "log F-norm of a simple function");
  c_norm->add_option("space", path_a)->required();
  c_norm->add_option("function", path_fn)->required();

  auto* c_member = app.add_subcommand("member", "membership in the log-integrable algebra");
  c_member->add_option("space", path_a)->required();
  c_member->add_option("function", path_fn)->required();

  auto* c_rn = app.add_subcommand("rn", "Radon-Nikodym derivative with certificate");
  c_rn->add_option("mu", path_a)->required();
  c_rn->add_option("nu", path_b)->required();

  auto* c_include = app.add_subcommand("include", "is L_log(mu) contained in L_log(nu)?");
  c_include->add_option("mu", path_a)->required();
  c_include->add_option("nu", path_b)->required();

  auto* c_equal = app.add_subcommand("equal", "is L_log(mu) equal to L_log(nu)?");
  c_equal->add_option("mu", path_a)->required();
  c_equal->add_option("nu", path_b)->required();

  auto* c_passport = app.add_subcommand("passport", "extract the passport of a space");
  c_passport->add_option("space", path_a)->required();

  auto* c_decide = app.add_subcommand("decide-iso", "star-isomorphism decision for two passports");
  c_decide->add_option("p1", path_a)->required();
  c_decide->add_option("p2", path_b)->required();

  auto* c_build = app.add_subcommand("build-iso", "construct the transported measure and checks");
  c_build->add_option("p1", path_a)->required();
  c_build->add_option("p2", path_b)->required();

  auto* c_cx = app.add_subcommand("counterexample", "divergence construction for an unbounded derivative");
  c_cx->add_option("mu", path_a)->required();
  c_cx->add_option("nu", path_b, "target space (omit when --ratio is given)");
  c_cx->add_option("--K", K, "truncation depth")->capture_default_str();
  c_cx->add_option("--ratio", path_ratio, "ratio rule file replacing nu");

  auto* c_p2 = app.add_subcommand("verify-prop2", "check the log-commutation identity cellwise");
  c_p2->add_option("p1", path_a)->required();
  c_p2->add_option("p2", path_b)->required();
  c_p2->add_option("--function", path_fn, "explicit function file");
  c_p2->add_option("--random", random_count, "number of sampled functions");
  c_p2->add_option("--seed", seed)->capture_default_str();

  auto* c_tr = app.add_subcommand("verify-transport", "check the integral/norm transport identities");
  c_tr->add_option("p1", path_a)->required();
  c_tr->add_option("p2", path_b)->required();
  c_tr->add_option("--function", path_fn, "explicit function file");
  c_tr->add_option("--random", random_count, "number of sampled functions");
  c_tr->add_option("--seed", seed)->capture_default_str();
  c_tr->add_option("--target", target, "gamma | pushforward")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  StringGuard out;

  if (c_norm->parsed() || c_member->parsed()) {
    SpaceGuard space;
    if (int rc = load_space(path_a, rational, space)) return rc;
    std::string fn;
    if (!read_file(path_fn, fn)) return fail_io(path_fn, "cannot read file");
    logiso_status st = c_norm->parsed() ? logiso_norm(space.s, fn.c_str(), &out.s)
                                        : logiso_member(space.s, fn.c_str(), &out.s);
    return print_result(st, out.s);
  }

  if (c_rn->parsed() || c_include->parsed() || c_equal->parsed()) {
    SpaceGuard mu, nu;
    if (int rc = load_space(path_a, rational, mu)) return rc;
    if (int rc = load_space(path_b, rational, nu)) return rc;
    logiso_status st;
    if (c_rn->parsed())
      st = logiso_rn(mu.s, nu.s, &out.s);
    else if (c_include->parsed())
      st = logiso_include(mu.s, nu.s, &out.s);
    else
      st = logiso_equal(mu.s, nu.s, &out.s);
    return print_result(st, out.s);
  }

  if (c_passport->parsed()) {
    SpaceGuard space;
    if (int rc = load_space(path_a, rational, space)) return rc;
    logiso_status st = logiso_passport_of(space.s, &out.s);
    return print_result(st, out.s);
  }

  if (c_decide->parsed() || c_build->parsed()) {
    PassportGuard p1, p2;
    if (int rc = load_passport(path_a, rational, p1)) return rc;
    if (int rc = load_passport(path_b, rational, p2)) return rc;
    logiso_status st = c_decide->parsed() ? logiso_decide_iso(p1.p, p2.p, &out.s)
                                          : logiso_build_iso(p1.p, p2.p, &out.s);
    return print_result(st, out.s);
  }

  if (c_cx->parsed()) {
    SpaceGuard mu;
    if (int rc = load_space(path_a, rational, mu)) return rc;
    logiso_status st;
    if (!path_ratio.empty()) {
      std::string rule;
      if (!read_file(path_ratio, rule)) return fail_io(path_ratio, "cannot read file");
      st = logiso_counterexample_rule(mu.s, rule.c_str(), K, &out.s);
    } else {
      if (path_b.empty()) return fail_io("nu", "provide a nu space or --ratio rule");
      SpaceGuard nu;
      if (int rc = load_space(path_b, rational, nu)) return rc;
      st = logiso_counterexample(mu.s, nu.s, K, &out.s);
    }
    return print_result(st, out.s);
  }

  if (c_p2->parsed() || c_tr->parsed()) {
    PassportGuard p1, p2;
    if (int rc = load_passport(path_a, rational, p1)) return rc;
    if (int rc = load_passport(path_b, rational, p2)) return rc;
    std::string fn;
    const char* fn_ptr = nullptr;
    if (!path_fn.empty()) {
      if (!read_file(path_fn, fn)) return fail_io(path_fn, "cannot read file");
      fn_ptr = fn.c_str();
    }
    logiso_status st;
    if (c_p2->parsed())
      st = logiso_verify_prop2(p1.p, p2.p, fn_ptr, random_count, seed, &out.s);
    else
      st = logiso_verify_transport(p1.p, p2.p, fn_ptr, random_count, seed, target.c_str(), &out.s);
    return print_result(st, out.s);
  }

  return 2;
}
