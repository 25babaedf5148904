#include "maxlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "maxlab/json_util.hpp"

namespace maxlab {

using nlohmann::json;

json space_to_json(const MetricMeasureSpace& space) {
  json points = json::array(), dist = json::array(), weight = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    points.push_back(space.label(i).str());
    json row = json::array();
    for (const auto& q : space.row(i)) row.push_back(to_string(q));
    dist.push_back(std::move(row));
    weight.push_back(to_string(space.weight(i)));
  }
  return {{"points", points}, {"dist", dist}, {"weight", weight}, {"provenance", space.provenance()}};
}

MetricMeasureSpace space_from_json(const json& j) {
  std::vector<PointLabel> labels;
  for (const auto& p : j.at("points")) labels.push_back(PointLabel::parse(p.get<std::string>()));
  std::vector<Rational> dist, weight;
  for (const auto& row : j.at("dist")) {
    if (row.size() != labels.size()) throw std::invalid_argument("dist rows must match the point count");
    for (const auto& q : row) dist.push_back(rational_from_json(q));
  }
  for (const auto& q : j.at("weight")) weight.push_back(rational_from_json(q));
  return {std::move(labels), std::move(dist), std::move(weight), j.value("provenance", std::string())};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return json::parse(in);
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

TestFunction function_from_json(const json& j, const MetricMeasureSpace& space) {
  if (j.is_array()) {
    if (j.size() != space.size())
      throw std::invalid_argument("function has " + std::to_string(j.size()) + " values for " +
                                  std::to_string(space.size()) + " atoms");
    TestFunction f;
    for (const auto& q : j) f.push_back(rational_from_json(q));
    return f;
  }
  if (!j.is_object()) throw std::invalid_argument("function must be an array or an object");
  if (j.contains("delta")) return delta(space, space.index_of(j["delta"].get<std::string>()));
  if (j.contains("constant")) return constant_function(space, rational_from_json(j["constant"]));
  TestFunction f(space.size(), Rational(0));
  for (const auto& [label, value] : j.items()) f[space.index_of(label)] = rational_from_json(value);
  return f;
}

json function_to_json(const TestFunction& f) {
  json a = json::array();
  for (const auto& q : f) a.push_back(to_string(q));
  return a;
}

json maximal_values_to_json(const MaximalValues& v, const MetricMeasureSpace& space) {
  json values = json::array(), witnesses = json::array();
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    values.push_back(to_string(v.values[i]));
    const auto& w = v.witnesses[i];
    witnesses.push_back({{"center", space.label(w.center).str()},
                         {"center_index", w.center},
                         {"radius", to_string(w.radius)}});
  }
  json points = json::array();
  for (std::size_t i = 0; i < space.size(); ++i) points.push_back(space.label(i).str());
  return {{"op", to_string(v.op)}, {"k", to_string(v.k)}, {"points", points}, {"values", values},
          {"witnesses", witnesses}};
}

json ratio_to_json(const RatioResult& r) {
  json j = {{"p", r.p.str()},
            {"kind", to_string(r.kind)},
            {"op", to_string(r.op)},
            {"k", to_string(r.k)},
            {"value", r.value}};
  if (r.kind == NormKind::weak || r.p.is_infinite()) {
    j["level"] = to_string(r.level);
    j["level_measure"] = to_string(r.level_measure);
  }
  if (r.g_power_sum) j["g_power_sum"] = to_string(*r.g_power_sum);
  if (r.f_power_sum) j["f_power_sum"] = to_string(*r.f_power_sum);
  return j;
}

json estimate_to_json(const ConstantEstimate& e) {
  json j = {{"k", to_string(e.k)},
            {"p", e.p.str()},
            {"kind", to_string(e.kind)},
            {"op", to_string(e.op)},
            {"lower_bound", e.lower_bound},
            {"witness", function_to_json(e.witness)},
            {"search",
             {{"method", e.log.method},
              {"restarts", e.log.restarts},
              {"iters", e.log.iters},
              {"seed", e.log.seed},
              {"evaluations", e.log.evaluations},
              {"best_restart", e.log.best_restart}}}};
  if (e.analytic_upper)
    j["analytic_upper"] = {{"value", e.analytic_upper->value}, {"paper_upper", e.analytic_upper->formula}};
  else
    j["analytic_upper"] = nullptr;
  return j;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << csv_field(r.space_id) << ',' << to_string(r.k) << ',' << r.p.str() << ',' << to_string(r.op) << ','
        << to_string(r.kind) << ',' << format_double(r.lower_bound) << ','
        << (r.analytic_upper ? format_double(*r.analytic_upper) : "") << ',' << csv_field(r.upper_formula) << ','
        << csv_field(r.witness_id) << ',' << r.evaluations << ',' << r.status << ','
        << format_double(r.runtime_ms) << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) throw std::invalid_argument("unexpected sweep CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 12) throw std::invalid_argument("sweep CSV row has " + std::to_string(f.size()) + " fields");
    SweepRow r;
    r.space_id = f[0];
    r.k = parse_rational(f[1]);
    r.p = LpExponent::parse(f[2]);
    r.op = parse_op_kind(f[3]);
    r.kind = parse_norm_kind(f[4]);
    r.lower_bound = std::stod(f[5]);
    if (!f[6].empty()) r.analytic_upper = std::stod(f[6]);
    r.upper_formula = f[7];
    r.witness_id = f[8];
    r.evaluations = std::stol(f[9]);
    r.status = f[10];
    r.runtime_ms = std::stod(f[11]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace maxlab
