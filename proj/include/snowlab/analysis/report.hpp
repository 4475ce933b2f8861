#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "snowlab/analysis/bias.hpp"

namespace snowlab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// Common envelope: schema, tool_version, op, params, seed, samples, estimate,
/// std_error, pass. Fields that do not apply are null.
Json make_report(const std::string& op, Json params, std::uint64_t seed);

/// Fills samples/estimate/std_error from a bias measurement and adds a `relation` object.
void attach_bias(Json& report, const BiasReport& bias);

Json bias_json(const BiasReport& bias);

/// Two-space indented JSON text.
std::string dump_report(const Json& report);

}  // namespace snowlab
