#include "api.hpp"

#include <cmath>

namespace logiso::api {

namespace {

std::string dumps(const Json& j) { return j.dump(); }

SimpleFunction parse_function(const std::string& text, const MeasureSpaceDesc& space,
                              bool force_exact) {
  return function_from_json(parse_object(text), space, force_exact);
}

}  // namespace

MeasureSpaceDesc parse_space_text(const std::string& text, bool force_exact) {
  return space_from_json(parse_object(text), force_exact);
}

Passport parse_passport_text(const std::string& text, bool force_exact) {
  return passport_from_json(parse_object(text), force_exact);
}

Outcome op_norm(const MeasureSpaceDesc& space, const std::string& function_json,
                bool force_exact) {
  SimpleFunction f = parse_function(function_json, space, force_exact);
  LogNormResult r = log_fnorm(f, space);
  return Outcome{0, dumps(norm_to_json(r))};
}

Outcome op_member(const MeasureSpaceDesc& space, const std::string& function_json,
                  bool force_exact) {
  SimpleFunction f = parse_function(function_json, space, force_exact);
  MembershipResult m = is_log_integrable(f, space);
  Json j;
  j["schema"] = "logiso/member/1";
  j["member"] = m.yes;
  j["norm"] = norm_to_json(m.norm);
  return Outcome{m.yes ? 0 : 1, dumps(j)};
}

Outcome op_rn(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu) {
  RNDerivative d = rn_derivative(mu, nu);
  return Outcome{d.bounded() ? 0 : 1, dumps(derivative_to_json(d))};
}

Outcome op_include(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu) {
  InclusionResult r = inclusion_check(mu, nu);
  Json j;
  j["schema"] = "logiso/include/1";
  j["included"] = r.included;
  if (r.included) {
    j["sup"] = r.sup.as_double();
    if (r.sup.is_rational()) j["sup_exact"] = scalar_to_json(r.sup);
  } else {
    Counterexample c = counterexample_from_derivative(mu, *r.derivative, 8);
    j["witness_preview"] = counterexample_to_json(c);
  }
  return Outcome{r.included ? 0 : 1, dumps(j)};
}

namespace {

const char* direction_token(NotEqualDirection d) {
  return d == NotEqualDirection::mu_not_in_nu ? "mu_not_in_nu" : "nu_not_in_mu";
}

}  // namespace

Outcome op_equal(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu) {
  EqualityResult r = equality_check(mu, nu);
  Json j;
  j["schema"] = "logiso/equal/1";
  j["equal"] = r.equal;
  if (r.equal) {
    j["sup_ratios"] = Json::array({r.sup_forward.as_double(), r.sup_backward.as_double()});
    if (r.sup_forward.is_rational() && r.sup_backward.is_rational())
      j["sup_ratios_exact"] =
          Json::array({scalar_to_json(r.sup_forward), scalar_to_json(r.sup_backward)});
  } else {
    j["direction"] = direction_token(r.failing);
    Json w;
    std::uint64_t idx = r.witness->witness(1e6);
    w["M"] = 1e6;
    w["index"] = idx;
    w["ratio"] = std::exp(r.witness->unbounded_seq().log_at(idx));
    j["witness"] = std::move(w);
  }
  return Outcome{r.equal ? 0 : 1, dumps(j)};
}

Outcome op_passport(const MeasureSpaceDesc& space) {
  return Outcome{0, dumps(passport_to_json(extract_passport(space)))};
}

Outcome op_decide_iso(const Passport& p1, const Passport& p2) {
  IsoVerdict v = log_iso_decision(p1, p2);
  return Outcome{v.yes ? 0 : 1, dumps(verdict_to_json(v))};
}

Outcome op_build_iso(const Passport& p1, const Passport& p2) {
  IsoVerdict v = log_iso_decision(p1, p2);
  if (!v.yes) return Outcome{1, dumps(verdict_to_json(v))};
  ComponentMap map = build_pairing(p1, p2);
  MeasureSpaceDesc nu_space = passport_space(p2.normalized());
  GammaMeasure gamma = build_gamma(p1, p2, map, nu_space);
  EqualityResult eq = equality_check(nu_space, gamma.as_space());
  Json j;
  j["schema"] = "logiso/build/1";
  j["decision"] = "yes";
  j["sup_ratios"] = Json::array({v.sup_forward.as_double(), v.sup_backward.as_double()});
  j["gamma_total"] = gamma.total().as_double();
  j["gamma_space"] = space_to_json(gamma.as_space());
  j["dgamma_dnu"] = derivative_to_json(gamma.dgamma_dnu());
  j["dnu_dgamma"] = derivative_to_json(gamma.dnu_dgamma());
  j["equality_nu_gamma"] = eq.equal ? "equal" : "not_equal";
  return Outcome{0, dumps(j)};
}

Outcome op_counterexample(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu,
                          std::uint64_t K) {
  Counterexample c = build_counterexample(mu, nu, K);
  return Outcome{0, dumps(counterexample_to_json(c))};
}

Outcome op_counterexample_rule(const MeasureSpaceDesc& mu, const std::string& rule_json,
                               std::uint64_t K, bool force_exact) {
  RatioRule rule = rule_from_json(parse_object(rule_json), "/", force_exact);
  Counterexample c = counterexample_from_derivative(mu, rn_from_rule(mu, rule), K);
  return Outcome{0, dumps(counterexample_to_json(c))};
}

namespace {

// Functions for the verification commands: one explicit, or seeded samples.
std::vector<SimpleFunction> verification_functions(const Passport& p,
                                                   const std::string& function_json,
                                                   std::uint32_t random_count, std::uint64_t seed,
                                                   bool force_exact,
                                                   const MeasureSpaceDesc& space) {
  std::vector<SimpleFunction> fns;
  if (!function_json.empty()) {
    fns.push_back(function_from_json(parse_object(function_json), space, force_exact));
  } else {
    (void)p;
    SplitMix64 rng(seed);
    if (random_count == 0) random_count = 20;
    for (std::uint32_t i = 0; i < random_count; ++i)
      fns.push_back(random_simple_function(space, rng));
  }
  return fns;
}

}  // namespace

Outcome op_verify_prop2(const Passport& p1, const Passport& p2, const std::string& function_json,
                        std::uint32_t random_count, std::uint64_t seed, bool force_exact) {
  Passport a = p1.normalized(), b = p2.normalized();
  StarIso iso = star_iso(build_pairing(a, b));
  MeasureSpaceDesc source = passport_space(a);
  std::vector<SimpleFunction> fns =
      verification_functions(a, function_json, random_count, seed, force_exact, source);
  double max_disc = 0.0;
  std::size_t cells = 0;
  for (const SimpleFunction& f : fns) {
    CommutationReport rep = verify_log_commutation(iso, f);
    max_disc = std::max(max_disc, rep.max_discrepancy);
    cells += rep.cells_checked;
  }
  Json j;
  j["schema"] = "logiso/prop2/1";
  j["functions"] = fns.size();
  j["cells_checked"] = cells;
  j["max_discrepancy"] = max_disc;
  j["ok"] = (max_disc == 0.0);
  return Outcome{max_disc == 0.0 ? 0 : 1, dumps(j)};
}

Outcome op_verify_transport(const Passport& p1, const Passport& p2,
                            const std::string& function_json, std::uint32_t random_count,
                            std::uint64_t seed, const std::string& target, bool force_exact) {
  TransportTarget tgt;
  if (target == "gamma")
    tgt = TransportTarget::gamma;
  else if (target == "pushforward")
    tgt = TransportTarget::pushforward;
  else
    throw Error(Errc::domain, "target must be \"gamma\" or \"pushforward\"");
  Passport a = p1.normalized(), b = p2.normalized();
  StarIso iso = star_iso(build_pairing(a, b));
  MeasureSpaceDesc source = passport_space(a);
  std::vector<SimpleFunction> fns =
      verification_functions(a, function_json, random_count, seed, force_exact, source);
  double max_int = 0.0, max_norm = 0.0;
  for (const SimpleFunction& f : fns) {
    TransportReport rep = verify_transport(iso, f, source, tgt);
    max_int = std::max(max_int, rep.integral_discrepancy);
    max_norm = std::max(max_norm, rep.norm_discrepancy);
  }
  bool ok = max_int <= 1e-9 && max_norm <= 1e-9;
  Json j;
  j["schema"] = "logiso/transport/1";
  j["functions"] = fns.size();
  j["max_integral_discrepancy"] = max_int;
  j["max_norm_discrepancy"] = max_norm;
  j["ok"] = ok;
  j["target"] = target;
  return Outcome{ok ? 0 : 1, dumps(j)};
}

Outcome op_log_equivalent(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu,
                          const std::string& pairing_json, bool force_exact) {
  SpacePairing pairing;
  if (!pairing_json.empty())
    pairing = pairing_from_json(parse_object(pairing_json), force_exact);
  bool eq = log_equivalent_decision(mu, nu, pairing);
  Json j;
  j["schema"] = "logiso/logequiv/1";
  j["log_equivalent"] = eq;
  return Outcome{eq ? 0 : 1, dumps(j)};
}

}  // namespace logiso::api
