#pragma once
// Text formats: samples as CSV cells or JSON arrays, distributions as JSON
// arrays of masses, and versioned JSON / CSV reports.

#include <string>
#include <string_view>

#include <json.hpp>

#include "lcb/closedform.hpp"
#include "lcb/dist.hpp"
#include "lcb/harness.hpp"
#include "lcb/oracle.hpp"
#include "lcb/quantile_approx.hpp"

namespace lcb::io {

inline constexpr std::string_view kSchemaVersion = "1.0";

/// Numbers from "0.5,1,0" or "[0.5, 1, 0]". Throws std::invalid_argument.
std::vector<double> parse_numbers(std::string_view text);

Sample parse_sample(const SupportGrid& grid, std::string_view text);

/// JSON array of m masses, validated as a Distribution.
Distribution parse_distribution(const SupportGrid& grid, std::string_view text);

nlohmann::json to_json(const SupportGrid& grid);
nlohmann::json to_json(const Sample& x);
nlohmann::json to_json(const Distribution& F);
nlohmann::json to_json(const SupportSet& C);
nlohmann::json to_json(const OracleResult& r);
nlohmann::json to_json(const QuantileBoundResult& r);
nlohmann::json to_json(const Bracket& b);
nlohmann::json to_json(const CoverageReport& r);
nlohmann::json to_json(const VerifyReport& r);

/// Wraps a payload with schema_version and a kind tag.
nlohmann::json envelope(std::string_view kind, nlohmann::json payload);

/// Flat objects become a header line plus a value line; arrays of such
/// objects become one line per element. Nested values are written as JSON text.
std::string to_csv(const nlohmann::json& flat);

}  // namespace lcb::io
