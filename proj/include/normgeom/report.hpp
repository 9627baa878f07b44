#pragma once

#include "normgeom/verify.hpp"

#include <json.hpp>

#include <string>

namespace normgeom {

using Json = nlohmann::ordered_json;

/// v rounded to 12 significant digits; non-finite values pass through.
double round_sig12(double v);

/// Text of round_sig12(v): shortest form, lowercase scientific below 1e-4,
/// "null" for non-finite values. Shared by the JSON and CSV writers.
std::string format_number(double v);

Json config_to_json(const SearchConfig& cfg);
SearchConfig config_from_json(const Json& j);

Json estimate_to_json(const ConstantEstimate& est);
ConstantEstimate estimate_from_json(const Json& j, const SearchConfig& cfg);

/// Keys: space, config, constants, checks, labels, timing. Everything except
/// `timing` is a deterministic function of the inputs.
Json report_to_json(const VerificationReport& report);

/// Inverse of report_to_json up to 12-digit rounding; a null `rhs`/`lhs`
/// reads back as +infinity. Throws SpecError on a schema mismatch.
VerificationReport report_from_json(const Json& j);

/// One row per constant: space,constant,parameter,value,converged,evaluations.
std::string constants_csv(const VerificationReport& report, bool header = true);

}  // namespace normgeom
