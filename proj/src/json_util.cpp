#include "maxlab/json_util.hpp"

#include <stdexcept>

namespace maxlab {

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw std::invalid_argument("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

nlohmann::json parse_provenance(const std::string& provenance) {
  auto j = nlohmann::json::parse(provenance, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("kind"))
    return {{"kind", "opaque"}, {"params", {{"text", provenance}}}};
  return j;
}

}  // namespace maxlab
