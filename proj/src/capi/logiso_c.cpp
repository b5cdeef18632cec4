#include "logiso.h"

#include <cstring>
#include <new>

#include "api.hpp"

struct logiso_space {
  logiso::MeasureSpaceDesc desc;
  bool exact;
};

struct logiso_passport {
  logiso::Passport p;
  bool exact;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

std::string error_doc(const logiso::Error& e) {
  return logiso::error_to_json(e).dump();
}

std::string error_doc(const std::exception& e) {
  logiso::Json j;
  j["schema"] = "logiso/error/1";
  j["error"] = {{"code", "InternalError"}, {"message", e.what()}};
  return j.dump();
}

// Runs fn() -> api::Outcome, mapping thrown errors onto LOGISO_ERR with an
// error document in the out slot.
template <class Fn>
logiso_status run(char** out_json, Fn&& fn) {
  try {
    logiso::api::Outcome o = fn();
    set_out(out_json, o.json);
    return o.status == 0 ? LOGISO_OK : LOGISO_NO;
  } catch (const logiso::Error& e) {
    set_out(out_json, error_doc(e));
    return LOGISO_ERR;
  } catch (const std::exception& e) {
    set_out(out_json, error_doc(e));
    return LOGISO_ERR;
  }
}

std::string or_empty(const char* s) { return s ? std::string(s) : std::string(); }

}  // namespace

extern "C" {

const char* logiso_version(void) { return "logiso 1.0.0"; }

void logiso_free(char* s) { delete[] s; }

logiso_status logiso_space_parse(const char* json, int force_exact, logiso_space** out,
                                 char** error_json) {
  if (!json || !out) return LOGISO_ERR;
  *out = nullptr;
  try {
    auto desc = logiso::api::parse_space_text(json, force_exact != 0);
    *out = new logiso_space{std::move(desc), force_exact != 0};
    return LOGISO_OK;
  } catch (const logiso::Error& e) {
    set_out(error_json, error_doc(e));
    return LOGISO_ERR;
  } catch (const std::exception& e) {
    set_out(error_json, error_doc(e));
    return LOGISO_ERR;
  }
}

void logiso_space_release(logiso_space* s) { delete s; }

logiso_status logiso_space_to_json(const logiso_space* s, char** out_json) {
  if (!s || !out_json) return LOGISO_ERR;
  return run(out_json, [&] {
    return logiso::api::Outcome{0, logiso::space_to_json(s->desc).dump()};
  });
}

logiso_status logiso_passport_parse(const char* json, int force_exact, logiso_passport** out,
                                    char** error_json) {
  if (!json || !out) return LOGISO_ERR;
  *out = nullptr;
  try {
    auto p = logiso::api::parse_passport_text(json, force_exact != 0);
    *out = new logiso_passport{std::move(p), force_exact != 0};
    return LOGISO_OK;
  } catch (const logiso::Error& e) {
    set_out(error_json, error_doc(e));
    return LOGISO_ERR;
  } catch (const std::exception& e) {
    set_out(error_json, error_doc(e));
    return LOGISO_ERR;
  }
}

void logiso_passport_release(logiso_passport* p) { delete p; }

logiso_status logiso_passport_to_json(const logiso_passport* p, char** out_json) {
  if (!p || !out_json) return LOGISO_ERR;
  return run(out_json, [&] {
    return logiso::api::Outcome{0, logiso::passport_to_json(p->p).dump()};
  });
}

logiso_status logiso_norm(const logiso_space* space, const char* function_json, char** out_json) {
  if (!space || !function_json) return LOGISO_ERR;
  return run(out_json,
             [&] { return logiso::api::op_norm(space->desc, function_json, space->exact); });
}

logiso_status logiso_member(const logiso_space* space, const char* function_json,
                            char** out_json) {
  if (!space || !function_json) return LOGISO_ERR;
  return run(out_json,
             [&] { return logiso::api::op_member(space->desc, function_json, space->exact); });
}

logiso_status logiso_rn(const logiso_space* mu, const logiso_space* nu, char** out_json) {
  if (!mu || !nu) return LOGISO_ERR;
  return run(out_json, [&] { return logiso::api::op_rn(mu->desc, nu->desc); });
}

logiso_status logiso_include(const logiso_space* mu, const logiso_space* nu, char** out_json) {
  if (!mu || !nu) return LOGISO_ERR;
  return run(out_json, [&] { return logiso::api::op_include(mu->desc, nu->desc); });
}

logiso_status logiso_equal(const logiso_space* mu, const logiso_space* nu, char** out_json) {
  if (!mu || !nu) return LOGISO_ERR;
  return run(out_json, [&] { return logiso::api::op_equal(mu->desc, nu->desc); });
}

logiso_status logiso_passport_of(const logiso_space* space, char** out_json) {
  if (!space) return LOGISO_ERR;
  return run(out_json, [&] { return logiso::api::op_passport(space->desc); });
}

logiso_status logiso_decide_iso(const logiso_passport* p1, const logiso_passport* p2,
                                char** out_json) {
  if (!p1 || !p2) return LOGISO_ERR;
  return run(out_json, [&] { return logiso::api::op_decide_iso(p1->p, p2->p); });
}

logiso_status logiso_build_iso(const logiso_passport* p1, const logiso_passport* p2,
                               char** out_json) {
  if (!p1 || !p2) return LOGISO_ERR;
  return run(out_json, [&] { return logiso::api::op_build_iso(p1->p, p2->p); });
}

logiso_status logiso_counterexample(const logiso_space* mu, const logiso_space* nu, uint64_t K,
                                    char** out_json) {
  if (!mu || !nu) return LOGISO_ERR;
  return run(out_json, [&] { return logiso::api::op_counterexample(mu->desc, nu->desc, K); });
}

logiso_status logiso_counterexample_rule(const logiso_space* mu, const char* ratio_rule_json,
                                         uint64_t K, char** out_json) {
  if (!mu || !ratio_rule_json) return LOGISO_ERR;
  return run(out_json, [&] {
    return logiso::api::op_counterexample_rule(mu->desc, ratio_rule_json, K, mu->exact);
  });
}

logiso_status logiso_verify_prop2(const logiso_passport* p1, const logiso_passport* p2,
                                  const char* function_json, uint32_t random_count, uint64_t seed,
                                  char** out_json) {
  if (!p1 || !p2) return LOGISO_ERR;
  return run(out_json, [&] {
    return logiso::api::op_verify_prop2(p1->p, p2->p, or_empty(function_json), random_count, seed,
                                        p1->exact);
  });
}

logiso_status logiso_verify_transport(const logiso_passport* p1, const logiso_passport* p2,
                                      const char* function_json, uint32_t random_count,
                                      uint64_t seed, const char* target, char** out_json) {
  if (!p1 || !p2 || !target) return LOGISO_ERR;
  return run(out_json, [&] {
    return logiso::api::op_verify_transport(p1->p, p2->p, or_empty(function_json), random_count,
                                            seed, target, p1->exact);
  });
}

logiso_status logiso_log_equivalent(const logiso_space* mu, const logiso_space* nu,
                                    const char* pairing_json, char** out_json) {
  if (!mu || !nu) return LOGISO_ERR;
  return run(out_json, [&] {
    return logiso::api::op_log_equivalent(mu->desc, nu->desc, or_empty(pairing_json), mu->exact);
  });
}

}  // extern "C"
