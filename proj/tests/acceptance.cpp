// Acceptance suite: one line per criterion on standard output, every
// tolerance pinned in code. Run via ctest or directly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "api.hpp"
#include "oracles.hpp"

using namespace logiso;

namespace {

Scalar q(long long n, long long d) { return Scalar::rational(n, d); }

struct Criterion {
  int number;
  const char* label;
  bool ok = true;
  ~Criterion() {
    std::printf("ACCEPTANCE %d %s - %s\n", number, ok ? "PASS" : "FAIL", label);
    std::fflush(stdout);
  }
};

#define ACC(cond)            \
  do {                       \
    bool _c = (cond);        \
    if (!_c) crit.ok = false; \
    CHECK(_c);               \
  } while (0)

MeasureSpaceDesc random_space(SplitMix64& rng) {
  std::vector<Scalar> atoms;
  std::size_t na = 1 + rng.next() % 5;
  for (std::size_t i = 0; i < na; ++i)
    atoms.push_back(q(1 + static_cast<long long>(rng.next() % 7),
                      4 + static_cast<long long>(rng.next() % 13)));
  std::vector<HomogeneousComponent> comps;
  std::size_t nc = rng.next() % 3;
  for (std::size_t i = 0; i < nc; ++i)
    comps.push_back(HomogeneousComponent{
        std::string(1, static_cast<char>('a' + i)), WeightTag{static_cast<std::uint32_t>(i)},
        q(1 + static_cast<long long>(rng.next() % 5), 2 + static_cast<long long>(rng.next() % 6))});
  return MeasureSpaceDesc::make(SequenceDSL::finite(std::move(atoms)), std::move(comps));
}

Passport ramp_geo_passport(long long an, long long ad, long long rn, long long rd) {
  return Passport::from_ramp(
      RampRows{0, SequenceDSL::geometric(q(an, ad), q(rn, rd))}, SequenceDSL::finite({}));
}

Passport prefix_passport() {
  return Passport::from_ramp(
      RampRows{0, SequenceDSL::prefix_then_tail(
                      {q(1, 4), q(1, 4)},
                      SequenceDSL::geometric(q(1, 2), q(1, 2)), 3)},
      SequenceDSL::finite({}));
}

}  // namespace

TEST_CASE("criterion 1: F-norm axiom suite") {
  Criterion crit{1, "F-norm axioms on 1000 random (space, f, g, alpha), 1e-9, < 5 s"};
  auto t0 = std::chrono::steady_clock::now();
  SplitMix64 rng(20240817);
  for (int trial = 0; trial < 1000; ++trial) {
    MeasureSpaceDesc s = random_space(rng);
    SimpleFunction f = random_simple_function(s, rng);
    SimpleFunction g = random_simple_function(s, rng);
    double nf = log_fnorm(f, s).value;
    double ng = log_fnorm(g, s).value;
    // (i) positivity off zero
    ACC(nf > 0.0);
    // (ii) contraction under |alpha| <= 1
    double rad = rng.uniform();
    double ang = rng.uniform() * 6.283185307179586;
    std::complex<double> alpha = std::polar(rad, ang);
    ACC(log_fnorm(scalar_multiply(alpha, f), s).value <= nf + 1e-9);
    // (iii) vanishing along alpha = 2^-j, monotonically
    double prev = nf, last = nf;
    for (int j = 1; j <= 40; ++j) {
      last = log_fnorm(scalar_multiply(std::ldexp(1.0, -j), f), s).value;
      ACC(last <= prev + 1e-9);
      prev = last;
    }
    ACC(last <= 1e-9);
    // (iv) triangle inequality
    ACC(log_fnorm(add(f, g, s), s).value <= nf + ng + 1e-9);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ACC(secs < 5.0);
}

TEST_CASE("criterion 2: divergence-construction reproduction") {
  Criterion crit{2, "mu_k = 2^-k, ratio k, K = 1e4: partials vs oracles, 1e-12"};
  const std::uint64_t K = 10000;

  // Literal instance: geometric masses with the derivative given as the rule k.
  MeasureSpaceDesc mu_geo =
      MeasureSpaceDesc::make(SequenceDSL::geometric(Scalar(1), q(1, 2)), {});
  RatioRule lin;
  lin.kind = SequenceDSL::Kind::powerlaw;
  lin.a = Scalar(1);
  lin.rp = Scalar(-1);
  Counterexample a = counterexample_from_derivative(mu_geo, rn_from_rule(mu_geo, lin), K);

  // The same ratio realized by a pure space pair: 1/k^3 vs 1/k^2.
  MeasureSpaceDesc mu_pl = MeasureSpaceDesc::make(SequenceDSL::powerlaw(Scalar(1), Scalar(3)), {});
  MeasureSpaceDesc nu_pl = MeasureSpaceDesc::make(SequenceDSL::powerlaw(Scalar(1), Scalar(2)), {});
  Counterexample b = build_counterexample(mu_pl, nu_pl, K);

  double oracle_basel = oracle::basel_partial(K);
  for (const Counterexample* c : {&a, &b}) {
    ACC(c->indices.size() == K);
    ACC(std::fabs(c->mu_partials[K - 1] - oracle_basel) <= 1e-12);
    ACC(c->mu_partials[K - 1] < oracle::kBaselLimit);
    // Lower bounds reach 5 by K = 84 (harmonic oracle).
    ACC(oracle::harmonic(84) > 5.0);
    ACC(c->nu_lower_bounds[83] > 5.0);
    ACC(std::fabs(c->nu_lower_bounds[K - 1] - oracle::harmonic(K)) <= 1e-12);
    // Monotonicity of both sequences.
    bool mono = true;
    for (std::uint64_t k = 1; k < K; ++k) {
      mono = mono && c->mu_partials[k] > c->mu_partials[k - 1];
      mono = mono && c->nu_lower_bounds[k] > c->nu_lower_bounds[k - 1];
    }
    ACC(mono);
  }
}

TEST_CASE("criterion 3: decision matrix") {
  Criterion crit{3, "identical / unbounded-ratio / bounded-perturbation / row-mismatch"};
  // (a) identical passports -> yes with sups (1,1).
  Passport geo_half = ramp_geo_passport(1, 1, 1, 2);
  IsoVerdict va = log_iso_decision(geo_half, geo_half);
  ACC(va.yes);
  ACC(va.sup_forward == Scalar(1));
  ACC(va.sup_backward == Scalar(1));

  // (b) geometric mismatch -> no, witness where (3/2)^n / 2 > 1e6.
  Passport geo_third = ramp_geo_passport(2, 1, 1, 3);
  IsoVerdict vb = log_iso_decision(geo_half, geo_third);
  ACC(!vb.yes);
  ACC(vb.reason == IsoReason::ratio_unbounded);
  std::uint64_t w = vb.witness.index;
  Scalar exact_ratio = Scalar::pow_uint(q(3, 2), w) / Scalar(2);
  Scalar exact_prev = Scalar::pow_uint(q(3, 2), w - 1) / Scalar(2);
  ACC(exact_ratio > Scalar(1000000));  // verified numerically, exact arithmetic
  ACC(exact_prev <= Scalar(1000000)); // and it is the first such index
  ACC(w == 36);

  // (c) bounded perturbation -> yes; sups match a 100-term scan within 1e-12.
  Passport pt = prefix_passport();
  IsoVerdict vc = log_iso_decision(geo_half, pt);
  ACC(vc.yes);
  double mx_f = 0, mx_b = 0;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    double gm = oracle::geometric_term(1, 0.5, n);
    double pm = pt.ramp().masses.term(n).as_double();
    mx_f = std::max(mx_f, gm / pm);
    mx_b = std::max(mx_b, pm / gm);
  }
  ACC(std::fabs(vc.sup_forward.as_double() - mx_f) <= 1e-12);
  ACC(std::fabs(vc.sup_backward.as_double() - mx_b) <= 1e-12);

  // (d) row mismatch -> no(RowMismatch).
  Passport r1 = Passport::from_rows(
      {PassportRow{WeightTag{0}, q(1, 2)}, PassportRow{WeightTag{1}, q(1, 2)}},
      SequenceDSL::finite({}));
  Passport r2 = Passport::from_rows(
      {PassportRow{WeightTag{0}, q(1, 2)}, PassportRow{WeightTag{2}, q(1, 2)}},
      SequenceDSL::finite({}));
  IsoVerdict vd = log_iso_decision(r1, r2);
  ACC(!vd.yes);
  ACC(vd.reason == IsoReason::row_mismatch);
}

TEST_CASE("criterion 4: constructive direction for every yes instance") {
  Criterion crit{4, "gamma total, cellwise reciprocity, certified sup, equality"};
  struct Pair {
    Passport mu, nu;
  };
  std::array<Pair, 2> pairs = {
      Pair{ramp_geo_passport(1, 1, 1, 2), ramp_geo_passport(1, 1, 1, 2)},  // (a) identical
      Pair{ramp_geo_passport(1, 1, 1, 2), prefix_passport()},              // (c) perturbation
  };
  for (const Pair& pr : pairs) {
    IsoVerdict v = log_iso_decision(pr.mu, pr.nu);
    REQUIRE(v.yes);
    MeasureSpaceDesc nu_space = passport_space(pr.nu.normalized());
    GammaMeasure g = build_gamma(pr.mu, pr.nu, build_pairing(pr.mu, pr.nu), nu_space);
    ACC(abs(g.total() - Scalar(1)).as_double() <= 1e-12);
    RNDerivative fwd = g.dgamma_dnu();
    RNDerivative bwd = g.dnu_dgamma();
    // (d gamma/d nu)(d nu/d gamma) = 1 cellwise, exactly, over the leading
    // 1000 cells of the (infinite) block structure.
    bool recip = true;
    for (std::uint64_t n = 1; n <= 1000; ++n) {
      std::string id = ramp_component_id(n);
      recip = recip && fwd.at_component(id).times(bwd.at_component(id)).is_one_exact();
    }
    ACC(recip);
    ACC(fwd.sup() == v.sup_forward);  // sup equals the passport certificate
    ACC(equality_check(nu_space, g.as_space()).equal);
  }
}

TEST_CASE("criterion 5: log-commutation and transport on random functions") {
  Criterion crit{5, "100 random functions per yes instance: 0 discrepancy, 1e-9 transport"};
  struct Pair {
    Passport mu, nu;
  };
  std::array<Pair, 2> pairs = {
      Pair{ramp_geo_passport(1, 1, 1, 2), ramp_geo_passport(1, 1, 1, 2)},
      Pair{ramp_geo_passport(1, 1, 1, 2), prefix_passport()},
  };
  SplitMix64 rng(5150);
  for (const Pair& pr : pairs) {
    StarIso iso = star_iso(build_pairing(pr.mu, pr.nu));
    MeasureSpaceDesc src = passport_space(pr.mu.normalized());
    for (int i = 0; i < 100; ++i) {
      SimpleFunction f = random_simple_function(src, rng);
      ACC(verify_log_commutation(iso, f).max_discrepancy == 0.0);
      TransportReport gamma_rep = verify_transport(iso, f, src, TransportTarget::gamma);
      ACC(gamma_rep.integral_discrepancy <= 1e-9);
      ACC(gamma_rep.norm_discrepancy <= 1e-9);
      TransportReport push_rep = verify_transport(iso, f, src, TransportTarget::pushforward);
      ACC(push_rep.integral_discrepancy <= 1e-9);
      ACC(push_rep.norm_discrepancy <= 1e-9);
    }
  }
}

TEST_CASE("criterion 6: inclusion/equality coherence on 50 random pairs") {
  Criterion crit{6, "certificates vs scans; divergence bounds past 1e3 within K <= 1e6"};
  SplitMix64 rng(606060);
  int not_included_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    // Random pair over a shared atom sequence; unbounded instances all have
    // exponentially growing ratios so their lower bounds cross any threshold.
    long long an = 1 + static_cast<long long>(rng.next() % 6);
    long long rn = 1 + static_cast<long long>(rng.next() % 3);
    long long rd = rn + 1 + static_cast<long long>(rng.next() % 4);
    SequenceDSL mu_atoms = SequenceDSL::geometric(q(an, 2), q(rn, rd));
    SequenceDSL nu_atoms = mu_atoms;
    switch (rng.next() % 4) {
      case 0:  // same decay, different coefficient (equivalent)
        nu_atoms = SequenceDSL::geometric(q(an + 1, 2), q(rn, rd));
        break;
      case 1:  // different geometric decay
        nu_atoms = SequenceDSL::geometric(q(1 + static_cast<long long>(rng.next() % 6), 2),
                                          q(rn, rd + 1));
        break;
      case 2:  // power-law against geometric
        nu_atoms = SequenceDSL::powerlaw(q(1 + static_cast<long long>(rng.next() % 6), 3),
                                         Scalar(2 + static_cast<long long>(rng.next() % 3)));
        break;
      default:  // bounded perturbation of the geometric
        nu_atoms = SequenceDSL::prefix_then_tail(
            {q(an, 4)},
            SequenceDSL::geometric(q(an, 2) * q(rn, rd), q(rn, rd)), 2);
        break;
    }
    MeasureSpaceDesc mu = MeasureSpaceDesc::make(mu_atoms, {});
    MeasureSpaceDesc nu = MeasureSpaceDesc::make(nu_atoms, {});

    InclusionResult fwd = inclusion_check(mu, nu);
    InclusionResult bwd = inclusion_check(nu, mu);
    ACC(fwd.included == fwd.derivative->bounded());
    // Certificates agree with a 500-term numeric scan.
    RNDerivative d = rn_derivative(mu, nu);
    if (d.bounded()) {
      double sup = d.sup().as_double();
      bool scan_ok = true;
      for (std::uint64_t k = 1; k <= 500; ++k) {
        double ratio = std::exp(nu_atoms.term_log(k) - mu_atoms.term_log(k));
        scan_ok = scan_ok && ratio <= sup * (1 + 1e-12);
      }
      ACC(scan_ok);
    } else {
      std::uint64_t w = d.witness(1e3);
      ACC(std::exp(d.unbounded_seq().log_at(w)) > 1e3);
    }
    EqualityResult eq = equality_check(mu, nu);
    ACC(eq.equal == (fwd.included && bwd.included));

    if (!fwd.included) {
      ++not_included_seen;
      Counterexample c = counterexample_from_derivative(mu, *fwd.derivative, 64);
      bool mono = true;
      for (std::size_t k = 1; k < c.mu_partials.size(); ++k)
        mono = mono && c.mu_partials[k] > c.mu_partials[k - 1];
      ACC(mono);
      ACC(c.mu_partials.back() <= oracle::kBaselLimit + 1e-9);
      MembershipResult under_nu = is_log_integrable(c.f, nu);
      ACC(!under_nu.yes);
      std::uint64_t cross = divergence_crossing(under_nu.norm, 1e3, 1000000);
      ACC(cross != 0);
      ACC(cross <= 1000000);
    }
  }
  ACC(not_included_seen >= 10);  // the corpus genuinely exercises the witness path
}

namespace {

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("criterion 7: CLI golden determinism and exit contract") {
  Criterion crit{7, "byte-identical JSON across runs; exit codes 0/1/2"};
  const std::string fx = std::string(FIXTURES_DIR) + "/";
  struct Cmd {
    std::string args;
    int expect;
  };
  const Cmd cmds[] = {
      {"norm " + fx + "s_two.json " + fx + "f_simple.json", 0},
      {"member " + fx + "s_two.json " + fx + "f_simple.json", 0},
      {"rn " + fx + "s_geo.json " + fx + "s_geo3.json", 0},
      {"rn " + fx + "s_geo3.json " + fx + "s_geo.json", 1},
      {"include " + fx + "s_geo.json " + fx + "s_geo3.json", 0},
      {"include " + fx + "s_geo3.json " + fx + "s_geo.json", 1},
      {"equal " + fx + "s_two.json " + fx + "s_two_scaled.json", 0},
      {"equal " + fx + "s_geo.json " + fx + "s_geo3.json", 1},
      {"passport " + fx + "s_two.json", 0},
      {"decide-iso " + fx + "p.json " + fx + "p.json", 0},
      {"decide-iso " + fx + "geo_half.json " + fx + "geo_third.json", 1},
      {"decide-iso " + fx + "p.json " + fx + "p_rowmm.json", 1},
      {"build-iso " + fx + "p.json " + fx + "p_fin_b.json", 0},
      {"counterexample " + fx + "mu.json " + fx + "nu.json --K 10", 0},
      {"counterexample " + fx + "s_geo.json --ratio " + fx + "rule_linear.json --K 10", 0},
      {"counterexample " + fx + "s_geo.json " + fx + "s_geo.json --K 5", 2},
      {"verify-prop2 " + fx + "p.json " + fx + "p_fin_b.json --random 5 --seed 7", 0},
      {"verify-transport " + fx + "p.json " + fx + "p_fin_b.json --random 5 --seed 7", 0},
      {"decide-iso " + fx + "bad_tau.json " + fx + "p.json", 2},
  };
  for (const Cmd& c : cmds) {
    CliRun first = run_cli(c.args);
    CliRun second = run_cli(c.args);
    ACC(first.exit_code == c.expect);
    ACC(first.out == second.out);
    ACC(!first.out.empty());
  }
  // The criterion-2 CLI path reproduces the oracle value.
  CliRun cx = run_cli("counterexample " + fx + "mu.json " + fx + "nu.json --K 10");
  ACC(cx.out.find("1.5497677311665408") != std::string::npos);
}
