#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "maxlab/experiments.hpp"
#include "maxlab/io.hpp"

using nlohmann::json;
using namespace maxlab;

namespace {

// Inline JSON text or a path to a JSON file.
json json_arg(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[' || text[first] == '"'))
    return json::parse(text);
  return read_json_file(text);
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(out, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact maximal operators on finite metric measure spaces"};
  app.require_subcommand(1);

  std::string desc, out;
  auto* build = app.add_subcommand("build-space", "Build a space from a construction descriptor");
  build->add_option("--desc", desc, "Descriptor JSON (inline or file)")->required();
  build->add_option("--out", out, "Output space JSON")->required();

  std::string space_path, op_text = "nc", k_text, f_text;
  auto* eval = app.add_subcommand("eval", "Evaluate a maximal function");
  eval->add_option("--space", space_path, "Space JSON file")->required();
  eval->add_option("--op", op_text, "c or nc")->check(CLI::IsMember({"c", "nc"}));
  eval->add_option("--k", k_text, "Dilation p/q")->required();
  eval->add_option("--f", f_text, "Function JSON (inline or file)")->required();
  eval->add_option("--out", out, "Output JSON (stdout if omitted)");

  std::string p_text, kind_text = "weak";
  long restarts = 8, iters = 40;
  std::uint64_t seed = 1;
  auto* est = app.add_subcommand("estimate", "Lower-bound a maximal constant");
  est->add_option("--space", space_path, "Space JSON file")->required();
  est->add_option("--k", k_text, "Dilation p/q")->required();
  est->add_option("--p", p_text, "Exponent p/q or inf")->required();
  est->add_option("--kind", kind_text, "weak or strong")->check(CLI::IsMember({"weak", "strong"}));
  est->add_option("--op", op_text, "c or nc")->check(CLI::IsMember({"c", "nc"}));
  est->add_option("--restarts", restarts, "Random restarts (0 with --iters 0: delta scan only)");
  est->add_option("--iters", iters, "Iterations per chain");
  est->add_option("--seed", seed, "Seed");
  est->add_option("--out", out, "Output JSON (stdout if omitted)");

  std::string name, params_text;
  std::optional<std::uint64_t> rseed;
  auto* rep = app.add_subcommand("reproduce", "Run a named experiment");
  rep->add_option("experiment", name, "lemma2, lemma3, lemma4, lemma5, lemma6-region, lemma7-threshold, "
                                      "prop1-identity, example1-family, sweep")
      ->required();
  rep->add_option("--params", params_text, "Parameter JSON (inline or file)");
  rep->add_option("--seed", rseed, "Seed (overrides params)");
  rep->add_option("--out", out, "Output directory")->required();

  std::string spec_path;
  auto* sw = app.add_subcommand("sweep", "Grid of constant estimates");
  sw->add_option("--spec", spec_path, "Sweep spec JSON (inline or file)")->required();
  sw->add_option("--out", out, "Output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      write_json_file(out, space_to_json(build_space(json_arg(desc))));
    } else if (*eval) {
      const auto space = space_from_json(read_json_file(space_path));
      const auto f = function_from_json(json_arg(f_text), space);
      emit(maximal_values_to_json(maximal(space, parse_op_kind(op_text), parse_rational(k_text), f), space), out);
    } else if (*est) {
      const auto space = space_from_json(read_json_file(space_path));
      const auto k = parse_rational(k_text);
      const auto p = LpExponent::parse(p_text);
      const auto kind = parse_norm_kind(kind_text);
      const auto op = parse_op_kind(op_text);
      auto e = restarts == 0 && iters == 0 ? delta_scan(space, k, p, kind, op)
                                           : ascent_search(space, k, p, kind, op, restarts, iters, seed);
      emit(estimate_to_json(e), out);
    } else if (*rep) {
      json params = params_text.empty() ? json::object() : json_arg(params_text);
      if (rseed) params["seed"] = *rseed;
      const auto report = reproduce(name, params);
      std::filesystem::create_directories(out);
      auto j = report.to_json();
      if (j["data"].contains("csv")) {
        std::ofstream(std::filesystem::path(out) / (name + ".csv")) << j["data"]["csv"].get<std::string>();
        j["data"].erase("csv");
      }
      write_json_file(std::filesystem::path(out) / "report.json", j);
      for (const auto& c : report.checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
                  << '\n';
      return report.ok() ? 0 : 1;
    } else if (*sw) {
      const auto res = sweep(sweep_spec_from_json(json_arg(spec_path)));
      std::filesystem::path csv(out);
      if (csv.has_parent_path()) std::filesystem::create_directories(csv.parent_path());
      std::ofstream file(csv);
      if (!file) throw std::runtime_error("cannot write " + out);
      write_sweep_csv(file, res.rows);
      auto wit = csv;
      wit.replace_extension(".witnesses.json");
      write_json_file(wit, res.witnesses);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
