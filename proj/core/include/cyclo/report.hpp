#pragma once

// JSON forms of the library results. Integers that may exceed 2^53 travel as
// decimal strings; doubles are written with round-trip precision.

#include <nlohmann/json.hpp>

#include <string_view>

#include "cyclo/circle.hpp"
#include "cyclo/construct.hpp"
#include "cyclo/cyclo_poly.hpp"

namespace cyclo {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.3.0";

/// Coefficients as an array of decimal strings.
Json to_json(const CycloPoly& poly);
CycloPoly cyclo_poly_from_json(u64 n, const Json& j);

/// A, S (decimal strings), degree, M and ratio A/M.
Json height_json(const HeightReport& h, const mpz_class& M);

Json to_json(const CircleProfile& p);
CircleProfile circle_profile_from_json(const Json& j);

Json to_json(const PrimeTower& t);
PrimeTower prime_tower_from_json(const Json& j);

Json to_json(const HFunction& h);
HFunction h_function_from_json(const Json& j);

}  // namespace cyclo
