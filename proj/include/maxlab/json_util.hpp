#pragma once

#include <string>

#include "json.hpp"
#include "maxlab/rational.hpp"

namespace maxlab {

/// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const nlohmann::json& j);
inline nlohmann::json rational_to_json(const Rational& q) { return to_string(q); }

/// Parses a provenance string; non-JSON provenance is wrapped as
/// {"kind": "opaque", "params": {"text": ...}}.
nlohmann::json parse_provenance(const std::string& provenance);

}  // namespace maxlab
