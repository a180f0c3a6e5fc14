#pragma once

// JSON descriptions of domains and solution fields, and report
// serialization (JSON and flattened CSV).
//
// Domain grammar:
//   {"kind":"ball","center":[...],"r":...}
//   {"kind":"box","low":[...],"high":[...]}
//   {"kind":"difference","a":<domain>,"b":<domain>}
//   {"kind":"translate","of":<domain>,"by":[...]}
// Solution grammar:
//   {"kind":"plane_wave","lambda":...,"direction":[...],"phase":...}
//   {"kind":"radial","lambda":...,"center":[...]}
//   {"kind":"membrane","i":...,"j":...,"a":...}
//   {"kind":"modified_radial","mu":...,"center":[...]}
// Unknown keys are rejected.

#include "helmball/geometry.hpp"
#include "helmball/solutions.hpp"
#include "helmball/verify.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace helmball {

/// Malformed or out-of-grammar input.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Domain domain_from_json(const nlohmann::json& j);
SolutionField solution_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

/// One row per report and per nested child (depth-first, children sorted by
/// name). Columns: name,lhs,rhs,residual,tolerance,error_bar,verdict.
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

}  // namespace helmball
