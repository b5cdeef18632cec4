// Exercises the shared-library surface exactly as an external client would:
// opaque handles, status codes, JSON strings.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "logiso.h"

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { logiso_free(s); }
  std::string view() const { return s ? std::string(s) : std::string(); }
};

const char* kGeoHalf = R"({"atoms":{"kind":"geometric","a":1,"r":{"num":1,"den":2}}})";
const char* kGeoThird = R"({"atoms":{"kind":"geometric","a":2,"r":{"num":1,"den":3}}})";
const char* kPassport =
    R"({"rows":[{"tau":0,"mass":{"num":1,"den":2}},{"tau":1,"mass":{"num":1,"den":2}}]})";
const char* kPassportB =
    R"({"rows":[{"tau":0,"mass":{"num":1,"den":4}},{"tau":1,"mass":{"num":3,"den":4}}]})";

struct Space {
  logiso_space* h = nullptr;
  ~Space() { logiso_space_release(h); }
};

struct Pass {
  logiso_passport* h = nullptr;
  ~Pass() { logiso_passport_release(h); }
};

}  // namespace

TEST_CASE("version and parse round-trip") {
  CHECK(std::string(logiso_version()).rfind("logiso", 0) == 0);
  Space s;
  Str err;
  REQUIRE(logiso_space_parse(kGeoHalf, 0, &s.h, &err.s) == LOGISO_OK);
  Str out;
  REQUIRE(logiso_space_to_json(s.h, &out.s) == LOGISO_OK);
  CHECK(out.view().find("\"geometric\"") != std::string::npos);

  Space s2;
  Str err2;
  REQUIRE(logiso_space_parse(out.s, 0, &s2.h, &err2.s) == LOGISO_OK);
  Str out2;
  REQUIRE(logiso_space_to_json(s2.h, &out2.s) == LOGISO_OK);
  CHECK(out.view() == out2.view());
}

TEST_CASE("parse errors produce diagnostics and LOGISO_ERR") {
  Space s;
  Str err;
  CHECK(logiso_space_parse("{\"atoms\":{\"kind\":\"geometric\",\"a\":1,\"r\":2}}", 0, &s.h,
                           &err.s) == LOGISO_ERR);
  CHECK(s.h == nullptr);
  CHECK(err.view().find("\"path\":\"/atoms\"") != std::string::npos);
  CHECK(logiso_space_parse(nullptr, 0, &s.h, &err.s) == LOGISO_ERR);
}

TEST_CASE("decision statuses: 0 yes, 1 no") {
  Pass p1, p2;
  Str e1, e2;
  REQUIRE(logiso_passport_parse(kPassport, 0, &p1.h, &e1.s) == LOGISO_OK);
  REQUIRE(logiso_passport_parse(kPassportB, 0, &p2.h, &e2.s) == LOGISO_OK);
  Str yes;
  CHECK(logiso_decide_iso(p1.h, p1.h, &yes.s) == LOGISO_OK);
  CHECK(yes.view().find("\"decision\":\"yes\"") != std::string::npos);
  Str building;
  CHECK(logiso_build_iso(p1.h, p2.h, &building.s) == LOGISO_OK);
  CHECK(building.view().find("\"equality_nu_gamma\":\"equal\"") != std::string::npos);

  Space mu, nu;
  Str em, en;
  REQUIRE(logiso_space_parse(kGeoHalf, 0, &mu.h, &em.s) == LOGISO_OK);
  REQUIRE(logiso_space_parse(kGeoThird, 0, &nu.h, &en.s) == LOGISO_OK);
  Str inc;
  CHECK(logiso_include(mu.h, nu.h, &inc.s) == LOGISO_OK);
  Str ninc;
  CHECK(logiso_include(nu.h, mu.h, &ninc.s) == LOGISO_NO);
  CHECK(ninc.view().find("\"witness_preview\"") != std::string::npos);
  Str eq;
  CHECK(logiso_equal(mu.h, nu.h, &eq.s) == LOGISO_NO);
  Str rn;
  CHECK(logiso_rn(mu.h, nu.h, &rn.s) == LOGISO_OK);
  CHECK(rn.view().find("\"bounded\":true") != std::string::npos);
}

TEST_CASE("norm, member and passport extraction through the C surface") {
  Space s;
  Str err;
  REQUIRE(logiso_space_parse(R"({"atoms":{"kind":"finite","values":[{"num":1,"den":2},{"num":1,"den":2}]}})",
                             0, &s.h, &err.s) == LOGISO_OK);
  const char* fn = R"({"cells":[{"cell":{"atoms":[1]},"re":1.0,"im":0.0}]})";
  Str norm;
  CHECK(logiso_norm(s.h, fn, &norm.s) == LOGISO_OK);
  CHECK(norm.view().find("\"finite\":true") != std::string::npos);
  Str member;
  CHECK(logiso_member(s.h, fn, &member.s) == LOGISO_OK);
  Str pass;
  CHECK(logiso_passport_of(s.h, &pass.s) == LOGISO_OK);
  CHECK(pass.view().find("\"atoms\"") != std::string::npos);
}

TEST_CASE("counterexample via rule and precondition failure") {
  Space mu;
  Str err;
  REQUIRE(logiso_space_parse(kGeoHalf, 0, &mu.h, &err.s) == LOGISO_OK);
  Str cx;
  CHECK(logiso_counterexample_rule(mu.h, R"({"kind":"powerlaw","a":1,"p":-1})", 10, &cx.s) ==
        LOGISO_OK);
  CHECK(cx.view().find("\"indices\":[1,2,3,4,5,6,7,8,9,10]") != std::string::npos);
  Str bad;
  CHECK(logiso_counterexample(mu.h, mu.h, 5, &bad.s) == LOGISO_ERR);
  CHECK(bad.view().find("DerivativeBounded") != std::string::npos);
}

TEST_CASE("verification commands are deterministic per seed") {
  Pass p1, p2;
  Str e1, e2;
  REQUIRE(logiso_passport_parse(kPassport, 0, &p1.h, &e1.s) == LOGISO_OK);
  REQUIRE(logiso_passport_parse(kPassportB, 0, &p2.h, &e2.s) == LOGISO_OK);
  Str a, b;
  CHECK(logiso_verify_prop2(p1.h, p2.h, nullptr, 7, 99, &a.s) == LOGISO_OK);
  CHECK(logiso_verify_prop2(p1.h, p2.h, nullptr, 7, 99, &b.s) == LOGISO_OK);
  CHECK(a.view() == b.view());
  Str t;
  CHECK(logiso_verify_transport(p1.h, p2.h, nullptr, 7, 99, "gamma", &t.s) == LOGISO_OK);
  CHECK(t.view().find("\"ok\":true") != std::string::npos);
  Str badtarget;
  CHECK(logiso_verify_transport(p1.h, p2.h, nullptr, 1, 1, "sideways", &badtarget.s) ==
        LOGISO_ERR);
}

TEST_CASE("log-equivalence with an explicit pairing") {
  const char* mu_json =
      R"({"components":[{"id":"a","tau":0,"mass":{"num":1,"den":2}},{"id":"b","tau":1,"mass":{"num":1,"den":2}}]})";
  const char* nu_json =
      R"({"components":[{"id":"x","tau":0,"mass":{"num":1,"den":2}},{"id":"y","tau":1,"mass":{"num":1,"den":2}}]})";
  Space mu, nu;
  Str e1, e2;
  REQUIRE(logiso_space_parse(mu_json, 0, &mu.h, &e1.s) == LOGISO_OK);
  REQUIRE(logiso_space_parse(nu_json, 0, &nu.h, &e2.s) == LOGISO_OK);
  Str ok;
  CHECK(logiso_log_equivalent(mu.h, nu.h, R"({"pairs":[{"from":"a","to":"x"},{"from":"b","to":"y"}]})",
                              &ok.s) == LOGISO_OK);
  CHECK(ok.view().find("\"log_equivalent\":true") != std::string::npos);
}
