#pragma once

#include <json.hpp>

#include "isomap.hpp"

namespace logiso {

using Json = nlohmann::json;

// Scalars: rationals as {"num":..., "den":...} (integers, or decimal strings
// past 2^53), doubles as plain JSON numbers. On input, integer literals are
// exact, decimal literals are doubles unless force_exact converts their
// binary value to an exact rational.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const std::string& path, bool force_exact);

Json dsl_to_json(const SequenceDSL& s);
SequenceDSL dsl_from_json(const Json& j, const std::string& path, bool force_exact);
RatioRule rule_from_json(const Json& j, const std::string& path, bool force_exact);

Json space_to_json(const MeasureSpaceDesc& s);
MeasureSpaceDesc space_from_json(const Json& j, bool force_exact);

Json passport_to_json(const Passport& p);
Passport passport_from_json(const Json& j, bool force_exact);

Json event_to_json(const Event& e);
Event event_from_json(const Json& j, const std::string& path, bool force_exact);

Json function_to_json(const SimpleFunction& f);
SimpleFunction function_from_json(const Json& j, const MeasureSpaceDesc& space, bool force_exact);

SpacePairing pairing_from_json(const Json& j, bool force_exact);

Json frac_to_json(const Frac& f);
Json derivative_to_json(const RNDerivative& d);
Json norm_to_json(const LogNormResult& r);
Json verdict_to_json(const IsoVerdict& v);
Json counterexample_to_json(const Counterexample& c);

Json error_to_json(const Error& e);

// Parses text, rejecting anything that is not a JSON object.
Json parse_object(const std::string& text);

}  // namespace logiso
