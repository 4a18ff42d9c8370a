#pragma once

#include <string>

#include <json.hpp>

#include "jnbellman/optimizers.hpp"
#include "jnbellman/report.hpp"

namespace jnb {

nlohmann::ordered_json to_json(const PiecewiseLogStep& phi);
PiecewiseLogStep piecewise_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const AverageTriple& triple);
nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(Point x);

/// Text with %.{digits}g formatting, "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v, int digits);

}  // namespace jnb
