#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxlab/constants.hpp"
#include "maxlab/maximal.hpp"
#include "maxlab/space.hpp"

namespace maxlab {

nlohmann::json space_to_json(const MetricMeasureSpace& space);
MetricMeasureSpace space_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

/// A JSON array of rationals, {"delta": label}, {"constant": "p/q"} or an
/// object mapping labels to values (missing labels are 0).
TestFunction function_from_json(const nlohmann::json& j, const MetricMeasureSpace& space);
nlohmann::json function_to_json(const TestFunction& f);

nlohmann::json maximal_values_to_json(const MaximalValues& values, const MetricMeasureSpace& space);
nlohmann::json ratio_to_json(const RatioResult& r);
nlohmann::json estimate_to_json(const ConstantEstimate& e);

/// 17 significant digits, round-trips through strtod.
std::string format_double(double x);

struct SweepRow {
  std::string space_id;
  Rational k;
  LpExponent p;
  OpKind op = OpKind::centered;
  NormKind kind = NormKind::weak;
  double lower_bound = 0;
  std::optional<double> analytic_upper;
  std::string upper_formula;
  std::string witness_id;
  long evaluations = 0;
  std::string status;  // "ok" or "budget_exhausted"
  double runtime_ms = 0;
};

inline constexpr const char* kSweepHeader =
    "space_id,k,p,op,kind,lower_bound,analytic_upper,upper_formula,witness_id,evaluations,status,runtime_ms";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

}  // namespace maxlab
