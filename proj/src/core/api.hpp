#pragma once

#include <string>

#include "json_io.hpp"

namespace logiso::api {

// One command outcome: a status matching the CLI exit contract (0 =
// yes/computed, 1 = decision no) and the result document with sorted keys.
// Input and precondition failures are reported by throwing Error.
struct Outcome {
  int status = 0;
  std::string json;
};

MeasureSpaceDesc parse_space_text(const std::string& text, bool force_exact);
Passport parse_passport_text(const std::string& text, bool force_exact);

Outcome op_norm(const MeasureSpaceDesc& space, const std::string& function_json, bool force_exact);
Outcome op_member(const MeasureSpaceDesc& space, const std::string& function_json,
                  bool force_exact);
Outcome op_rn(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu);
Outcome op_include(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu);
Outcome op_equal(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu);
Outcome op_passport(const MeasureSpaceDesc& space);
Outcome op_decide_iso(const Passport& p1, const Passport& p2);
Outcome op_build_iso(const Passport& p1, const Passport& p2);
Outcome op_counterexample(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu,
                          std::uint64_t K);
Outcome op_counterexample_rule(const MeasureSpaceDesc& mu, const std::string& rule_json,
                               std::uint64_t K, bool force_exact);
Outcome op_verify_prop2(const Passport& p1, const Passport& p2, const std::string& function_json,
                        std::uint32_t random_count, std::uint64_t seed, bool force_exact);
Outcome op_verify_transport(const Passport& p1, const Passport& p2,
                            const std::string& function_json, std::uint32_t random_count,
                            std::uint64_t seed, const std::string& target, bool force_exact);
Outcome op_log_equivalent(const MeasureSpaceDesc& mu, const MeasureSpaceDesc& nu,
                          const std::string& pairing_json, bool force_exact);

}  // namespace logiso::api
