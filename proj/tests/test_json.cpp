#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "json_io.hpp"

using namespace logiso;

namespace {

Scalar q(long long n, long long d) { return Scalar::rational(n, d); }

MeasureSpaceDesc sample_space() {
  return MeasureSpaceDesc::make(
      SequenceDSL::finite({q(1, 4), q(1, 8)}),
      {HomogeneousComponent{"a", WeightTag{0}, q(1, 2)},
       HomogeneousComponent{"b", WeightTag{1}, q(1, 8)}});
}

}  // namespace

TEST_CASE("scalar round-trip: rationals stay rational, doubles stay doubles") {
  Scalar r = q(22, 7);
  Json jr = scalar_to_json(r);
  CHECK(jr["num"] == 22);
  CHECK(jr["den"] == 7);
  Scalar r2 = scalar_from_json(jr, "/", false);
  CHECK(r2.is_rational());
  CHECK(r2 == r);

  Scalar d = Scalar::from_double(0.125);
  Json jd = scalar_to_json(d);
  CHECK(jd.is_number_float());
  CHECK(scalar_from_json(jd, "/", false) == d);

  // Integer literals are exact; decimals become exact only under force_exact.
  CHECK(scalar_from_json(Json(3), "/", false).is_rational());
  CHECK(!scalar_from_json(Json(0.3), "/", false).is_rational());
  CHECK(scalar_from_json(Json(0.3), "/", true).is_rational());

  // Big numerators serialize as strings and come back exactly.
  Scalar big = Scalar(Rational(pow(BigInt(7), 40), BigInt(3)));
  Json jb = scalar_to_json(big);
  CHECK(jb["num"].is_string());
  CHECK(scalar_from_json(jb, "/", false) == big);
}

TEST_CASE("space round-trip including ramps and infinite flags") {
  MeasureSpaceDesc s = sample_space();
  Json j = space_to_json(s);
  MeasureSpaceDesc s2 = space_from_json(j, false);
  CHECK(space_to_json(s2) == j);
  CHECK(s2.rational_mode());

  MeasureSpaceDesc ramp = MeasureSpaceDesc::make_ramp(
      SequenceDSL::geometric(q(1, 3), q(1, 3)),
      ComponentRamp{2, SequenceDSL::prefix_then_tail(
                           {q(1, 4)}, SequenceDSL::geometric(q(1, 8), q(1, 2)), 2)});
  Json jr = space_to_json(ramp);
  CHECK(space_to_json(space_from_json(jr, false)) == jr);

  MeasureSpaceDesc inf = MeasureSpaceDesc::make(SequenceDSL::finite({Scalar(1)}), {},
                                                std::nullopt, true);
  Json ji = space_to_json(inf);
  CHECK(ji["total_mass"] == "infinite");
  CHECK(space_from_json(ji, false).declared_infinite());
}

TEST_CASE("passport round-trip") {
  Passport p = Passport::from_rows(
      {PassportRow{WeightTag{0}, q(1, 3)}, PassportRow{WeightTag{2}, q(2, 3)}},
      SequenceDSL::geometric(q(1, 2), q(1, 2)));
  Json j = passport_to_json(p);
  CHECK(passport_to_json(passport_from_json(j, false)) == j);

  Passport ramp = Passport::from_ramp(
      RampRows{1, SequenceDSL::geometric(Scalar(1), q(1, 2))}, SequenceDSL::finite({}));
  Json jr = passport_to_json(ramp);
  CHECK(passport_to_json(passport_from_json(jr, false)) == jr);
}

TEST_CASE("function round-trip with ordinary and log-domain cells") {
  MeasureSpaceDesc s = sample_space();
  SimpleFunction f = SimpleFunction::from_cells(
      {{Event::atom(1), Coeff::from_complex({1.5, -2.0})},
       {Event::component("a", q(1, 4)), Coeff::from_complex(3.0)},
       {Event::atom(2), Coeff::from_log1p(Scalar(1000))}},
      s);
  Json j = function_to_json(f);
  SimpleFunction f2 = function_from_json(j, s, false);
  CHECK(f2 == f);
  CHECK(function_to_json(f2) == j);

  SimpleFunction g = SimpleFunction::with_dsl_support(
      SequenceDSL::geometric(Scalar(1), q(1, 2)));
  MeasureSpaceDesc inf_atoms =
      MeasureSpaceDesc::make(SequenceDSL::geometric(Scalar(1), q(1, 2)), {});
  Json jg = function_to_json(g);
  CHECK(function_to_json(function_from_json(jg, inf_atoms, false)) == jg);
}

TEST_CASE("multi-part cells decompose but keep their measure") {
  MeasureSpaceDesc s = sample_space();
  Json j;
  j["cells"] = Json::array();
  Json cell;
  cell["cell"] = {{"atoms", {1, 2}}, {"components", {{"a", {{"num", 1}, {"den", 4}}}}}};
  cell["re"] = 2.0;
  cell["im"] = 0.0;
  j["cells"].push_back(cell);
  SimpleFunction f = function_from_json(j, s, false);
  CHECK(f.atom_cells().size() == 2);
  CHECK(f.comp_cells().size() == 1);
  CHECK(integral(f, s).real() == doctest::Approx((0.25 + 0.125 + 0.25) * 2.0).epsilon(1e-15));
}

TEST_CASE("schema diagnostics name the offending path") {
  auto catch_path = [](const char* text) {
    try {
      space_from_json(parse_object(text), false);
      return std::string("no error");
    } catch (const Error& e) {
      return e.path();
    }
  };
  CHECK(catch_path("{\"atoms\":{\"kind\":\"geometric\",\"a\":1}}") == "/atoms/r");
  CHECK(catch_path("{\"atoms\":{\"kind\":\"geometric\",\"a\":1,\"r\":2}}") == "/atoms");
  CHECK(catch_path("{\"components\":[{\"id\":\"c\",\"tau\":0}]}") == "/components/0/mass");

  // Non-increasing tau rows are rejected with a pointed message.
  try {
    passport_from_json(parse_object("{\"rows\":[{\"tau\":1,\"mass\":0.5},{\"tau\":1,\"mass\":0.5}]}"),
                       false);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("tau strictly increasing") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_object("not json"), Error);
  CHECK_THROWS_AS(parse_object("[1,2]"), Error);
}

TEST_CASE("rational literals activate exact mode") {
  MeasureSpaceDesc s = space_from_json(
      parse_object("{\"atoms\":{\"kind\":\"finite\",\"values\":[{\"num\":1,\"den\":3},"
                   "{\"num\":2,\"den\":3}]}}"),
      false);
  CHECK(s.rational_mode());
  CHECK(s.atom_mass(1) == q(1, 3));
  MeasureSpaceDesc d = space_from_json(
      parse_object("{\"atoms\":{\"kind\":\"finite\",\"values\":[0.25,0.75]}}"), false);
  CHECK(!d.rational_mode());
  MeasureSpaceDesc forced = space_from_json(
      parse_object("{\"atoms\":{\"kind\":\"finite\",\"values\":[0.25,0.75]}}"), true);
  CHECK(forced.rational_mode());
}

TEST_CASE("serialization is deterministic") {
  MeasureSpaceDesc s = sample_space();
  CHECK(space_to_json(s).dump() == space_to_json(s).dump());
  Json j = space_to_json(s);
  std::string once = j.dump();
  // Keys come out sorted, so equal documents have equal bytes.
  CHECK(once.find("\"atoms\"") < once.find("\"components\""));
  CHECK(once.find("\"components\"") < once.find("\"schema\""));
}

TEST_CASE("verdict and counterexample documents") {
  Passport a = Passport::from_ramp(RampRows{0, SequenceDSL::geometric(Scalar(1), q(1, 2))},
                                   SequenceDSL::finite({}));
  Passport b = Passport::from_ramp(RampRows{0, SequenceDSL::geometric(Scalar(2), q(1, 3))},
                                   SequenceDSL::finite({}));
  Json yes = verdict_to_json(log_iso_decision(a, a));
  CHECK(yes["decision"] == "yes");
  CHECK(yes["sup_ratios"][0] == 1.0);
  CHECK(yes["sup_ratios"][1] == 1.0);
  Json no = verdict_to_json(log_iso_decision(a, b));
  CHECK(no["decision"] == "no");
  CHECK(no["reason"]["kind"] == "ratio_unbounded");
  CHECK(no["reason"]["witness"]["index"] == 36);

  MeasureSpaceDesc mu = MeasureSpaceDesc::make(SequenceDSL::powerlaw(Scalar(1), Scalar(3)), {});
  MeasureSpaceDesc nu = MeasureSpaceDesc::make(SequenceDSL::powerlaw(Scalar(1), Scalar(2)), {});
  Json cx = counterexample_to_json(build_counterexample(mu, nu, 4));
  CHECK(cx["K"] == 4);
  CHECK(cx["indices"] == Json::array({1, 2, 3, 4}));
  CHECK(cx["f"]["truncated"] == true);
  CHECK(cx["f"]["cells"][0].contains("ell"));
}
