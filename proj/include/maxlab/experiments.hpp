#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxlab/constants.hpp"
#include "maxlab/constructions.hpp"
#include "maxlab/io.hpp"

namespace maxlab {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string experiment;
  nlohmann::json params;
  nlohmann::json data;
  std::vector<Check> checks;

  bool ok() const;
  void check(std::string name, bool pass, std::string detail = {});
  nlohmann::json to_json() const;
};

/// Delta at x_{n,0} under the centered operator, strong (1,1), for every
/// branch n <= n_max, against the harmonic sum; then `trials` random
/// functions on the random_n_max truncation, noncentered weak (1,1) <= 2.
Report run_lemma2(const Rational& k, long n_max, long trials, std::uint64_t seed, long random_n_max = 12);

/// Delta at x_{n,0}, noncentered strong (1,1) >= (n-1)/2; random functions,
/// centered strong (1,1) <= 4.
Report run_lemma3(const Rational& k, long n_max, long trials, std::uint64_t seed, long random_n_max = 12);

struct BasicGrid {
  std::vector<long> taus{1, 2, 4, 8, 16};
  std::vector<Rational> ms{2, 4, 16};
  std::vector<LpExponent> ps{LpExponent(1), LpExponent(Rational(3, 2)), LpExponent(2)};
  Rational k = 1;
  Rational d = 0;  // 0: 3/2 for the star space, 2 for the two-layer space
  long restarts = 200;
  long iters = 20;
};

/// Star space: delta scans (weak, both operators) within [target/3, target]
/// for target = max{1, tau^(1/p) m^(1/p-1)}; every lower bound, delta and
/// ascent, below the closed-form upper bound.
Report run_lemma4(const BasicGrid& grid, std::uint64_t seed);

/// Two-layer space: noncentered weak delta scan within [target/4, target];
/// centered ascent (weak and strong) at most 24; all below the closed forms.
Report run_lemma5(const BasicGrid& grid, std::uint64_t seed);

struct RegionSpec {
  std::vector<Rational> k_grid;
  std::vector<LpExponent> p_grid;
  double t_div = 100;
  double c_bnd_factor = 10;
};

enum class Region { diverging, bounded, bracket, measured, out_of_range };
const char* to_string(Region r);

/// Per-cell outcome of a region sweep.
struct RegionCell {
  Rational k;
  LpExponent p;
  std::vector<long> n;
  std::vector<double> noncentered;  // per component
  std::vector<double> centered;
  double sup_noncentered = 0;
  double sup_centered = 0;
  double c_bnd = 0;
  Region region = Region::measured;
  bool monotone = false;
};

/// The cap 10 x (closed-form constant of the k >= d or p >= p+4 eps regime).
double bounded_cap(BasicKind kind, const LpExponent& p, double factor);

/// Sup over components of the lumped lower bound (weak type, both operators)
/// for each cell of the grid.
std::vector<RegionCell> region_sweep(const Family& family, BasicKind kind, const RegionSpec& spec);

/// Lemma-6 style family (star components unless two_layer) with the
/// divergence, boundedness and bracket classification.
Report run_lemma6_region(const FamilyParams& family, const RegionSpec& region, bool two_layer = false);

/// Centered bounds of the star family with tau_n = n, m_n = 2 below, at and
/// above the threshold k.
Report run_lemma7_threshold(const Rational& k, Lemma7Mode mode, long n_max, const std::vector<LpExponent>& ps,
                            double growth_threshold = 50);

/// Random functions on a glued space: the glued maximal function equals
/// max{component value, mean of f} exactly on every component.
Report run_prop1_identity(const std::vector<MetricMeasureSpace>& components, const Rational& k0, const Rational& k,
                          long trials, std::uint64_t seed);

/// Piecewise-linear non-increasing profile through (k, h) nodes.
struct Profile {
  std::vector<std::pair<Rational, Rational>> nodes;
  Rational operator()(const Rational& k) const;
};

Report run_example1(const Profile& hc, const std::vector<std::pair<Rational, Rational>>& samples, long n_max,
                    const Rational& margin = 1, double t_div = 100);

struct SweepSpace {
  std::string id;
  MetricMeasureSpace space;
};

struct SweepSpec {
  std::vector<SweepSpace> spaces;
  std::vector<Rational> k_grid;
  std::vector<LpExponent> p_grid;
  std::vector<NormKind> kinds{NormKind::weak};
  std::vector<OpKind> ops{OpKind::noncentered};
  long restarts = 8;
  long iters = 40;
  long max_evaluations = 1000000;  // per cell
  std::uint64_t seed = 1;
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j);

struct SweepResult {
  std::vector<SweepRow> rows;
  nlohmann::json witnesses;  // witness_id -> function
};

SweepResult sweep(const SweepSpec& spec);

/// Dispatch by experiment name with JSON parameters (defaults filled in).
Report reproduce(const std::string& name, const nlohmann::json& params);

}  // namespace maxlab
