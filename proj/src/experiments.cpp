#include "maxlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "maxlab/json_util.hpp"
#include "maxlab/lumped.hpp"

namespace maxlab {

using nlohmann::json;

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::check(std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

json Report::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"experiment", experiment}, {"params", params}, {"data", data}, {"checks", cs}, {"ok", ok()}};
}

const char* to_string(Region r) {
  switch (r) {
    case Region::diverging: return "DIVERGING";
    case Region::bounded: return "BOUNDED";
    case Region::bracket: return "BRACKET";
    case Region::measured: return "MEASURED";
    case Region::out_of_range: return "OUT_OF_RANGE";
  }
  return "?";
}

namespace {

std::string branch_origin(long n) { return "x_{" + std::to_string(n) + ",0}"; }

std::string fmt(double x) { return format_double(x); }

}  // namespace

Report run_lemma2(const Rational& k, long n_max, long trials, std::uint64_t seed, long random_n_max) {
  Report rep;
  rep.experiment = "lemma2";
  rep.params = {{"k", to_string(k)}, {"n_max", n_max}, {"trials", trials}, {"seed", seed},
                {"random_n_max", random_n_max}};
  const auto space = segment_preset_lemma2(k, n_max);
  const MaximalOperator M(space, k);
  json rows = json::array();
  bool all = true;
  for (long n = 1; n <= n_max; ++n) {
    double h = 0;
    for (long j = 1; j <= n - 1; ++j) h += 1.0 / static_cast<double>(j + 1);
    double v = ratio(M, space, LpExponent(1), NormKind::strong, OpKind::centered,
                     delta(space, space.index_of(branch_origin(n))))
                   .value;
    bool pass = v >= h - 1e-9;
    all = all && pass;
    rows.push_back({{"n", n}, {"ratio", v}, {"harmonic", h}, {"pass", pass}});
  }
  rep.data["delta"] = rows;
  rep.check("centered strong (1,1) delta ratio >= harmonic sum, n <= " + std::to_string(n_max), all);

  const auto small = segment_preset_lemma2(k, random_n_max);
  const MaximalOperator Ms(small, k);
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (long t = 0; t < trials; ++t) {
    auto f = random_function(small.size(), rng);
    worst = std::max(worst, ratio(Ms, small, LpExponent(1), NormKind::weak, OpKind::noncentered, f).value);
  }
  rep.data["random_max_weak"] = worst;
  rep.check("noncentered weak (1,1) ratio <= 2 over " + std::to_string(trials) + " random functions",
            approx_le(worst, 2.0), "max " + fmt(worst));
  return rep;
}

Report run_lemma3(const Rational& k, long n_max, long trials, std::uint64_t seed, long random_n_max) {
  Report rep;
  rep.experiment = "lemma3";
  rep.params = {{"k", to_string(k)}, {"n_max", n_max}, {"trials", trials}, {"seed", seed},
                {"random_n_max", random_n_max}};
  const auto space = segment_preset_lemma3(k, n_max);
  const MaximalOperator M(space, k);
  json rows = json::array();
  bool all = true;
  for (long n = 1; n <= n_max; ++n) {
    const double bound = (n - 1) / 2.0;
    double v = ratio(M, space, LpExponent(1), NormKind::strong, OpKind::noncentered,
                     delta(space, space.index_of(branch_origin(n))))
                   .value;
    bool pass = v >= bound - 1e-9;
    all = all && pass;
    rows.push_back({{"n", n}, {"ratio", v}, {"bound", bound}, {"pass", pass}});
  }
  rep.data["delta"] = rows;
  rep.check("noncentered strong (1,1) delta ratio >= (n-1)/2, n <= " + std::to_string(n_max), all);

  const auto small = segment_preset_lemma3(k, random_n_max);
  const MaximalOperator Ms(small, k);
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (long t = 0; t < trials; ++t) {
    auto f = random_function(small.size(), rng);
    worst = std::max(worst, ratio(Ms, small, LpExponent(1), NormKind::strong, OpKind::centered, f).value);
  }
  rep.data["random_max_strong"] = worst;
  rep.check("centered strong (1,1) ratio <= 4 over " + std::to_string(trials) + " random functions",
            approx_le(worst, 4.0), "max " + fmt(worst));
  return rep;
}

namespace {

double basic_target(long tau, const Rational& m, const LpExponent& p) {
  if (p.is_infinite()) return 1;
  const double pd = p.as_double();
  return std::max(1.0, std::pow(static_cast<double>(tau), 1 / pd) * std::pow(to_double(m), 1 / pd - 1));
}

}  // namespace

Report run_lemma4(const BasicGrid& grid, std::uint64_t seed) {
  Report rep;
  rep.experiment = "lemma4";
  const Rational d = grid.d == 0 ? Rational(3, 2) : grid.d;
  rep.params = {{"k", to_string(grid.k)}, {"d", to_string(d)}, {"restarts", grid.restarts},
                {"iters", grid.iters}, {"seed", seed}};
  if (grid.k >= d) throw std::invalid_argument("lemma4 grid needs k < d");
  json rows = json::array();
  bool bracket = true, below_upper = true;
  for (long tau : grid.taus)
    for (const auto& m : grid.ms)
      for (const auto& p : grid.ps) {
        const auto S = basic_s({tau, d, m});
        const double target = basic_target(tau, m, p);
        for (auto op : {OpKind::centered, OpKind::noncentered}) {
          auto ds = delta_scan(S, grid.k, p, NormKind::weak, op);
          auto strong = delta_scan(S, grid.k, p, NormKind::strong, op);
          bool in = ds.lower_bound >= target / 3 - 1e-9 && approx_le(ds.lower_bound, target);
          bool under = ds.analytic_upper && approx_le(ds.lower_bound, ds.analytic_upper->value) &&
                       approx_le(strong.lower_bound, strong.analytic_upper->value);
          json row = {{"tau", tau}, {"m", to_string(m)}, {"p", p.str()}, {"op", to_string(op)},
                      {"target", target}, {"delta_weak", ds.lower_bound}, {"delta_strong", strong.lower_bound},
                      {"upper", ds.analytic_upper ? ds.analytic_upper->value : -1.0}};
          if (op == OpKind::noncentered && grid.restarts > 0) {
            for (auto kind : {NormKind::weak, NormKind::strong}) {
              auto a = ascent_search(S, grid.k, p, kind, op, grid.restarts, grid.iters, seed);
              row[std::string("ascent_") + to_string(kind)] = a.lower_bound;
              under = under && a.analytic_upper && approx_le(a.lower_bound, a.analytic_upper->value);
            }
          }
          bracket = bracket && in;
          below_upper = below_upper && under;
          row["in_bracket"] = in;
          row["below_upper"] = under;
          rows.push_back(std::move(row));
        }
      }
  rep.data["cells"] = rows;
  rep.check("weak delta scans within [target/3, target]", bracket);
  rep.check("all lower bounds <= closed-form upper bound", below_upper);
  return rep;
}

Report run_lemma5(const BasicGrid& grid, std::uint64_t seed) {
  Report rep;
  rep.experiment = "lemma5";
  const Rational d = grid.d == 0 ? Rational(2) : grid.d;
  rep.params = {{"k", to_string(grid.k)}, {"d", to_string(d)}, {"restarts", grid.restarts},
                {"iters", grid.iters}, {"seed", seed}};
  if (grid.k >= d) throw std::invalid_argument("lemma5 grid needs k < d");
  json rows = json::array();
  bool bracket = true, below_upper = true, centered_24 = true;
  double worst_centered = 0;
  for (long tau : grid.taus)
    for (const auto& m : grid.ms)
      for (const auto& p : grid.ps) {
        const auto T = basic_t({tau, d, m});
        const double target = basic_target(tau, m, p);
        auto ds = delta_scan(T, grid.k, p, NormKind::weak, OpKind::noncentered);
        auto strong = delta_scan(T, grid.k, p, NormKind::strong, OpKind::noncentered);
        bool in = ds.lower_bound >= target / 4 - 1e-9 && approx_le(ds.lower_bound, target);
        bool under = ds.analytic_upper && approx_le(ds.lower_bound, ds.analytic_upper->value) &&
                     approx_le(strong.lower_bound, strong.analytic_upper->value);
        json row = {{"tau", tau}, {"m", to_string(m)}, {"p", p.str()}, {"target", target},
                    {"delta_weak_nc", ds.lower_bound}, {"delta_strong_nc", strong.lower_bound},
                    {"upper_nc", ds.analytic_upper ? ds.analytic_upper->value : -1.0}};
        for (auto kind : {NormKind::weak, NormKind::strong}) {
          auto a = ascent_search(T, grid.k, p, kind, OpKind::centered, grid.restarts, grid.iters, seed);
          row[std::string("ascent_c_") + to_string(kind)] = a.lower_bound;
          worst_centered = std::max(worst_centered, a.lower_bound);
          centered_24 = centered_24 && approx_le(a.lower_bound, 24);
          under = under && a.analytic_upper && approx_le(a.lower_bound, a.analytic_upper->value);
        }
        bracket = bracket && in;
        below_upper = below_upper && under;
        row["in_bracket"] = in;
        row["below_upper"] = under;
        rows.push_back(std::move(row));
      }
  rep.data["cells"] = rows;
  rep.data["max_centered"] = worst_centered;
  rep.check("noncentered weak delta scans within [target/4, target]", bracket);
  rep.check("all lower bounds <= closed-form upper bound", below_upper);
  rep.check("centered ascent results <= 24", centered_24, "max " + fmt(worst_centered));
  return rep;
}

double bounded_cap(BasicKind kind, const LpExponent& p, double factor) {
  if (p.is_infinite()) return factor;
  const double q = p.as_double();
  if (kind == BasicKind::S) return factor * std::pow(std::pow(2, q - 1) * (std::pow(2, q - 1) + 2), 1 / q);
  return factor * std::pow(3 * std::pow(5, q - 1) *
                               (2 + std::pow(3, q) + std::pow(6, q) + std::pow(3, q) * std::pow(2, 2 * q - 1)),
                           1 / q);
}

std::vector<RegionCell> region_sweep(const Family& family, BasicKind kind, const RegionSpec& spec) {
  std::vector<std::pair<Rational, LpExponent>> grid;
  for (const auto& k : spec.k_grid)
    for (const auto& p : spec.p_grid) grid.emplace_back(k, p);
  std::vector<LumpedSpace> comps;
  for (const auto& m : family.members) comps.push_back(lumped_basic(m.kind, m.params));

  std::vector<RegionCell> cells(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    RegionCell c;
    c.k = grid[i].first;
    c.p = grid[i].second;
    c.c_bnd = bounded_cap(kind, c.p, spec.c_bnd_factor);
    if (c.k >= family.k0 + 1) {
      c.region = Region::out_of_range;
      cells[i] = std::move(c);
      return;
    }
    for (std::size_t j = 0; j < comps.size(); ++j) {
      c.n.push_back(family.members[j].n);
      c.noncentered.push_back(lumped_lower_bound(comps[j], c.k, c.p, NormKind::weak, OpKind::noncentered).value);
      c.centered.push_back(lumped_lower_bound(comps[j], c.k, c.p, NormKind::weak, OpKind::centered).value);
    }
    c.sup_noncentered = *std::max_element(c.noncentered.begin(), c.noncentered.end());
    c.sup_centered = *std::max_element(c.centered.begin(), c.centered.end());
    c.monotone = true;
    for (std::size_t j = 1; j < c.noncentered.size(); ++j)
      if (c.noncentered[j] < c.noncentered[j - 1] * (1 - 1e-12)) c.monotone = false;
    if (c.monotone && c.noncentered.back() > spec.t_div)
      c.region = Region::diverging;
    else if (c.sup_noncentered <= c.c_bnd)
      c.region = Region::bounded;
    else
      c.region = Region::measured;
    cells[i] = std::move(c);
  });
  return cells;
}

namespace {

json sequence(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string region_csv(const std::vector<RegionCell>& cells) {
  std::ostringstream out;
  out << "k,p,region,sup_noncentered,sup_centered,c_bnd,monotone,last_noncentered\n";
  for (const auto& c : cells)
    out << to_string(c.k) << ',' << c.p.str() << ',' << to_string(c.region) << ',' << format_double(c.sup_noncentered)
        << ',' << format_double(c.sup_centered) << ',' << format_double(c.c_bnd) << ',' << (c.monotone ? 1 : 0) << ','
        << (c.noncentered.empty() ? "" : format_double(c.noncentered.back())) << '\n';
  return out.str();
}

json cell_json(const RegionCell& c) {
  return {{"k", to_string(c.k)},
          {"p", c.p.str()},
          {"region", to_string(c.region)},
          {"sup_noncentered", c.sup_noncentered},
          {"sup_centered", c.sup_centered},
          {"c_bnd", c.c_bnd},
          {"monotone", c.monotone},
          {"n", c.n},
          {"noncentered", sequence(c.noncentered)},
          {"centered", sequence(c.centered)}};
}

bool p_at_least(const LpExponent& a, const Rational& b) { return a.is_infinite() || a.value() >= b; }
bool p_below(const LpExponent& a, const Rational& b) { return !a.is_infinite() && a.value() < b; }

}  // namespace

Report run_lemma6_region(const FamilyParams& fp, const RegionSpec& region, bool two_layer) {
  Report rep;
  rep.experiment = "lemma6-region";
  const BasicKind kind = two_layer ? BasicKind::T : BasicKind::S;
  const Family fam = two_layer ? family_lemma6p(fp) : family_lemma6(fp);
  rep.params = fam.descriptor;
  rep.params["t_div"] = region.t_div;
  rep.params["c_bnd_factor"] = region.c_bnd_factor;
  rep.params["space"] = two_layer ? "basic_t" : "basic_s";
  auto cells = region_sweep(fam, kind, region);

  const double lo = std::sqrt(static_cast<double>(fp.N)) / 8;
  const double hi = 8.0 * static_cast<double>(fp.N) * static_cast<double>(fp.N);
  json out = json::array();
  for (auto& c : cells) {
    if (c.region == Region::out_of_range) {
      out.push_back(cell_json(c));
      continue;
    }
    const std::string where = "cell (k'=" + to_string(c.k) + ", p'=" + c.p.str() + ")";
    const bool k_low = c.k <= fp.k;
    const bool k_high = c.k >= fp.k + fp.delta;
    const bool p_high = p_at_least(c.p, fp.p + 4 * fp.epsilon);
    if (k_low && !c.p.is_infinite() && c.p.value() >= fp.p && c.p.value() <= fp.p + fp.epsilon) {
      c.region = Region::bracket;
      rep.check(where + " within [N^(1/2)/8, 8 N^2]", c.sup_noncentered >= lo && c.sup_noncentered <= hi,
                "value " + fmt(c.sup_noncentered));
    } else if (k_low && p_below(c.p, fp.p)) {
      rep.check(where + " grows monotonically", c.monotone, to_string(c.region));
    } else if (k_high || p_high) {
      rep.check(where + " BOUNDED", c.region == Region::bounded,
                "sup " + fmt(c.sup_noncentered) + ", cap " + fmt(c.c_bnd));
    }
    out.push_back(cell_json(c));
  }
  rep.data["cells"] = out;
  rep.data["bracket"] = {{"low", lo}, {"high", hi}};
  rep.data["csv"] = region_csv(cells);
  return rep;
}

Report run_lemma7_threshold(const Rational& k, Lemma7Mode mode, long n_max, const std::vector<LpExponent>& ps,
                            double growth_threshold) {
  Report rep;
  rep.experiment = "lemma7-threshold";
  const Family fam = family_lemma7(k, mode, n_max);
  rep.params = fam.descriptor;
  rep.params["growth_threshold"] = growth_threshold;
  std::vector<Rational> ks;
  if (k > 1) ks.push_back((1 + k) / 2);
  ks.push_back(k);
  ks.push_back((k + 2) / 2);
  std::vector<LumpedSpace> comps;
  for (const auto& m : fam.members) comps.push_back(lumped_basic(m.kind, m.params));

  json cells = json::array();
  for (const auto& kp : ks)
    for (const auto& p : ps) {
      std::vector<double> v;
      for (const auto& c : comps) v.push_back(lumped_lower_bound(c, kp, p, NormKind::weak, OpKind::centered).value);
      bool monotone = true;
      for (std::size_t j = 1; j < v.size(); ++j)
        if (v[j] < v[j - 1] * (1 - 1e-12)) monotone = false;
      const double cap = bounded_cap(BasicKind::S, p, 10);
      const std::string where = "k'=" + to_string(kp) + ", p=" + p.str();
      const bool diverging_side = mode == Lemma7Mode::strict ? kp < k : kp <= k;
      std::string label;
      if (p.is_infinite()) {
        const double top = *std::max_element(v.begin(), v.end());
        label = "BOUNDED";
        rep.check(where + " bounded by 1", approx_le(top, 1.0), "max " + fmt(top));
      } else if (diverging_side) {
        const bool grows = monotone && v.back() > v.front();
        const bool exceeds = v.back() > growth_threshold;
        label = grows && exceeds ? "DIVERGING" : grows ? "GROWING" : "MEASURED";
        rep.check(where + " grows with n", grows, "last " + fmt(v.back()));
        if (p.value() == 1)
          rep.check(where + " exceeds " + fmt(growth_threshold), exceeds, "last " + fmt(v.back()));
      } else {
        double top = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
          if (fam.members[j].params.d <= kp) top = std::max(top, v[j]);
        label = top <= cap ? "BOUNDED" : "MEASURED";
        rep.check(where + " bounded on components with d_n <= k'", top <= cap,
                  "max " + fmt(top) + ", cap " + fmt(cap));
      }
      cells.push_back({{"k", to_string(kp)}, {"p", p.str()}, {"region", label}, {"values", sequence(v)}});
    }
  rep.data["cells"] = cells;
  return rep;
}

Report run_prop1_identity(const std::vector<MetricMeasureSpace>& components, const Rational& k0, const Rational& k,
                          long trials, std::uint64_t seed) {
  if (k > k0) throw std::invalid_argument("identity needs k <= k0");
  Report rep;
  rep.experiment = "prop1-identity";
  json descs = json::array();
  for (const auto& c : components) descs.push_back(parse_provenance(c.provenance()));
  rep.params = {{"k0", to_string(k0)}, {"k", to_string(k)}, {"trials", trials}, {"seed", seed},
                {"components", descs}};
  const GlueParams gp{k0, components};
  const auto glued = glue(gp);
  const auto parts = glue_rescaled_components(gp);
  const MaximalOperator Mg(glued, k);
  std::vector<MaximalOperator> Mc;
  for (const auto& p : parts) Mc.emplace_back(p, k);
  const Rational total = total_measure(glued);

  std::mt19937_64 rng(seed);
  long mismatches = 0, compared = 0;
  for (long t = 0; t < trials; ++t) {
    auto f = random_function(glued.size(), rng);
    if (t % 4 == 1) {  // supported on a single component
      auto [b, e] = glue_component_range(gp, 1 + static_cast<std::size_t>(t / 4) % components.size());
      for (std::size_t i = 0; i < f.size(); ++i)
        if (i < b || i >= e) f[i] = 0;
    }
    Rational mass = 0;
    for (std::size_t i = 0; i < f.size(); ++i) mass += f[i] * glued.weight(i);
    const Rational mean = mass / total;
    for (auto op : {OpKind::noncentered, OpKind::centered}) {
      auto g = Mg.apply(op, f);
      for (std::size_t n = 1; n <= components.size(); ++n) {
        auto [b, e] = glue_component_range(gp, n);
        TestFunction fn(f.begin() + static_cast<long>(b), f.begin() + static_cast<long>(e));
        auto local = Mc[n - 1].apply(op, fn);
        for (std::size_t i = b; i < e; ++i) {
          ++compared;
          if (g.values[i] != std::max(local.values[i - b], mean)) ++mismatches;
        }
      }
    }
  }
  rep.data = {{"compared", compared}, {"mismatches", mismatches}, {"atoms", glued.size()}};
  rep.check("glued value = max{component value, mean} at every atom", mismatches == 0,
            std::to_string(mismatches) + " of " + std::to_string(compared));
  return rep;
}

Rational Profile::operator()(const Rational& k) const {
  if (nodes.empty()) throw std::invalid_argument("profile needs nodes");
  if (k <= nodes.front().first) return nodes.front().second;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto& [k0, h0] = nodes[i];
    const auto& [k1, h1] = nodes[i + 1];
    if (k <= k1) return h0 + (h1 - h0) * (k - k0) / (k1 - k0);
  }
  return nodes.back().second;
}

Report run_example1(const Profile& hc, const std::vector<std::pair<Rational, Rational>>& samples, long n_max,
                    const Rational& margin, double t_div) {
  Report rep;
  rep.experiment = "example1-family";
  json nodes = json::array();
  for (const auto& [k, h] : hc.nodes) nodes.push_back({to_string(k), to_string(h)});
  rep.params = {{"nodes", nodes}, {"n_max", n_max}, {"margin", to_string(margin)}, {"t_div", t_div}};
  for (std::size_t i = 1; i < hc.nodes.size(); ++i)
    if (hc.nodes[i].first <= hc.nodes[i - 1].first || hc.nodes[i].second > hc.nodes[i - 1].second)
      throw std::invalid_argument("profile nodes must have increasing k and non-increasing h");

  if (hc(1) <= 1) {
    auto e = delta_scan(one_point_space(), 1, LpExponent(1), NormKind::strong, OpKind::noncentered);
    rep.data = {{"omega_empty", true}, {"space", "one_point"}, {"constant", e.lower_bound}};
    rep.check("empty region gives the one-point space with constant 1", e.lower_bound == 1.0);
    return rep;
  }
  rep.data["omega_empty"] = false;
  json rows = json::array();
  const Rational eps(1, 4);
  for (const auto& [k, p] : samples) {
    json row = {{"k", to_string(k)}, {"p", to_string(p)}};
    const std::string where = "sample (" + to_string(k) + ", " + to_string(p) + ")";
    if (!(k >= 1 && k < 2 && p >= 1 && p < hc(k))) {
      row["built"] = false;
      rows.push_back(std::move(row));
      continue;
    }
    Rational delta = 0;
    for (long j = 1; j < 64; ++j) {
      Rational cand = (2 - k) / pow_int(Rational(2), j);
      if (p < hc(k + cand)) {
        delta = cand;
        break;
      }
    }
    if (delta == 0) throw std::logic_error("no admissible delta for " + where);
    const Family fam = family_lemma6({k, p, eps, delta, 1, 2, n_max});
    RegionSpec spec;
    spec.t_div = t_div;
    spec.k_grid = {k};
    const Rational p_bound = hc(k) + margin;
    spec.p_grid = {LpExponent(p_bound)};
    if (p > 1) spec.p_grid.insert(spec.p_grid.begin(), LpExponent(1));
    auto cells = region_sweep(fam, BasicKind::S, spec);
    row["built"] = true;
    row["delta"] = to_string(delta);
    if (p > 1) {
      row["divergence_probe"] = cell_json(cells.front());
      rep.check(where + " diverges at p'=1", cells.front().region == Region::diverging,
                "last " + fmt(cells.front().noncentered.back()));
    }
    row["boundedness_probe"] = cell_json(cells.back());
    rep.check(where + " bounded at p'=" + to_string(p_bound), cells.back().region == Region::bounded,
              "sup " + fmt(cells.back().sup_noncentered));
    rows.push_back(std::move(row));
  }
  rep.data["samples"] = rows;
  return rep;
}

namespace {

std::vector<Rational> rationals(const json& j) {
  std::vector<Rational> out;
  for (const auto& q : j) out.push_back(rational_from_json(q));
  return out;
}

std::vector<LpExponent> exponents(const json& j) {
  std::vector<LpExponent> out;
  for (const auto& q : j)
    out.push_back(q.is_string() ? LpExponent::parse(q.get<std::string>()) : LpExponent(rational_from_json(q)));
  return out;
}

bool p_less(const LpExponent& a, const LpExponent& b) {
  if (a.is_infinite() || b.is_infinite()) return !a.is_infinite() && b.is_infinite();
  return a.value() < b.value();
}

}  // namespace

SweepSpec sweep_spec_from_json(const json& j) {
  SweepSpec s;
  for (const auto& sp : j.at("spaces"))
    s.spaces.push_back({sp.at("id").get<std::string>(),
                        sp.contains("desc") ? build_space(sp["desc"]) : space_from_json(sp.at("space"))});
  s.k_grid = rationals(j.at("k_grid"));
  s.p_grid = exponents(j.at("p_grid"));
  if (j.contains("kinds")) {
    s.kinds.clear();
    for (const auto& k : j["kinds"]) s.kinds.push_back(parse_norm_kind(k.get<std::string>()));
  }
  if (j.contains("ops")) {
    s.ops.clear();
    for (const auto& o : j["ops"]) s.ops.push_back(parse_op_kind(o.get<std::string>()));
  }
  const auto budget = j.value("budget", json::object());
  s.restarts = budget.value("restarts", s.restarts);
  s.iters = budget.value("iters", s.iters);
  s.max_evaluations = budget.value("max_evaluations", s.max_evaluations);
  s.seed = j.value("seed", s.seed);
  if (s.spaces.empty() || s.k_grid.empty() || s.p_grid.empty() || s.kinds.empty() || s.ops.empty())
    throw std::invalid_argument("sweep grids must be nonempty");
  return s;
}

SweepResult sweep(const SweepSpec& spec) {
  struct Cell {
    std::size_t space;
    Rational k;
    LpExponent p;
    NormKind kind;
    OpKind op;
  };
  std::vector<Cell> cells;
  for (std::size_t s = 0; s < spec.spaces.size(); ++s)
    for (const auto& k : spec.k_grid)
      for (const auto& p : spec.p_grid)
        for (auto kind : spec.kinds)
          for (auto op : spec.ops) cells.push_back({s, k, p, kind, op});

  std::vector<SweepRow> rows(cells.size());
  std::vector<TestFunction> wit(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const auto& c = cells[i];
    const auto& sp = spec.spaces[c.space];
    const auto start = std::chrono::steady_clock::now();
    SweepRow r;
    r.space_id = sp.id;
    r.k = c.k;
    r.p = c.p;
    r.kind = c.kind;
    r.op = c.op;
    r.witness_id = sp.id + "/k=" + to_string(c.k) + "/p=" + c.p.str() + "/" + to_string(c.kind) + "/" + to_string(c.op);
    try {
      const long need = static_cast<long>(sp.space.size()) + (spec.restarts + 2) * (spec.iters + 1);
      ConstantEstimate e;
      if (need > spec.max_evaluations) {
        e = delta_scan(sp.space, c.k, c.p, c.kind, c.op);
        r.status = "budget_exhausted";
      } else {
        e = ascent_search(sp.space, c.k, c.p, c.kind, c.op, spec.restarts, spec.iters, spec.seed);
        r.status = "ok";
      }
      r.lower_bound = e.lower_bound;
      r.evaluations = e.log.evaluations;
      if (e.analytic_upper) {
        r.analytic_upper = e.analytic_upper->value;
        r.upper_formula = e.analytic_upper->formula;
      }
      wit[i] = std::move(e.witness);
    } catch (const std::exception& ex) {
      r.status = std::string("error: ") + ex.what();
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rows[i] = std::move(r);
  });

  std::vector<std::size_t> order(cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = rows[a];
    const auto& y = rows[b];
    if (x.space_id != y.space_id) return x.space_id < y.space_id;
    if (x.k != y.k) return x.k < y.k;
    if (!(x.p == y.p)) return p_less(x.p, y.p);
    if (x.kind != y.kind) return x.kind < y.kind;
    return x.op < y.op;
  });
  SweepResult out;
  out.witnesses = json::object();
  for (auto i : order) {
    out.witnesses[rows[i].witness_id] = function_to_json(wit[i]);
    out.rows.push_back(std::move(rows[i]));
  }
  return out;
}

namespace {

Rational rat(const json& p, const char* key, const char* fallback) {
  return p.contains(key) ? rational_from_json(p[key]) : parse_rational(fallback);
}

BasicGrid grid_from(const json& p) {
  BasicGrid g;
  if (p.contains("taus")) g.taus = p["taus"].get<std::vector<long>>();
  if (p.contains("ms")) g.ms = rationals(p["ms"]);
  if (p.contains("ps")) g.ps = exponents(p["ps"]);
  g.k = rat(p, "k", "1");
  if (p.contains("d")) g.d = rational_from_json(p["d"]);
  g.restarts = p.value("restarts", g.restarts);
  g.iters = p.value("iters", g.iters);
  return g;
}

std::vector<std::pair<Rational, Rational>> pairs(const json& j) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& e : j) out.emplace_back(rational_from_json(e.at(0)), rational_from_json(e.at(1)));
  return out;
}

}  // namespace

Report reproduce(const std::string& name, const json& params) {
  const json p = params.is_null() ? json::object() : params;
  const std::uint64_t seed = p.value("seed", std::uint64_t{1});
  if (name == "lemma2")
    return run_lemma2(rat(p, "k", "2"), p.value("n_max", 20L), p.value("trials", 1000L), seed,
                      p.value("random_n_max", 12L));
  if (name == "lemma3")
    return run_lemma3(rat(p, "k", "3"), p.value("n_max", 20L), p.value("trials", 1000L), seed,
                      p.value("random_n_max", 12L));
  if (name == "lemma4") return run_lemma4(grid_from(p), seed);
  if (name == "lemma5") return run_lemma5(grid_from(p), seed);
  if (name == "lemma6-region") {
    FamilyParams f;
    f.k = rat(p, "k", "3/2");
    f.p = rat(p, "p", "2");
    f.epsilon = rat(p, "epsilon", "1/4");
    f.delta = rat(p, "delta", "1/4");
    f.N = p.value("N", 2L);
    f.n_min = p.value("n_min", f.N + 1);
    f.n_max = p.value("n_max", 40L);
    RegionSpec r;
    r.k_grid = p.contains("k_grid") ? rationals(p["k_grid"])
                                    : std::vector<Rational>{f.k - f.delta, f.k, f.k + f.delta / 2, f.k + f.delta};
    r.p_grid = p.contains("p_grid") ? exponents(p["p_grid"])
                                    : std::vector<LpExponent>{LpExponent(1), LpExponent(f.p - f.epsilon),
                                                              LpExponent(f.p), LpExponent(f.p + f.epsilon),
                                                              LpExponent(f.p + 4 * f.epsilon), LpExponent::infinity()};
    r.t_div = p.value("t_div", r.t_div);
    r.c_bnd_factor = p.value("c_bnd_factor", r.c_bnd_factor);
    return run_lemma6_region(f, r, p.value("two_layer", false));
  }
  if (name == "lemma7-threshold") {
    auto mode = p.value("mode", std::string("strict")) == "weak" ? Lemma7Mode::weak : Lemma7Mode::strict;
    auto ps = p.contains("ps") ? exponents(p["ps"])
                               : std::vector<LpExponent>{LpExponent(1), LpExponent(2), LpExponent::infinity()};
    return run_lemma7_threshold(rat(p, "k", "3/2"), mode, p.value("n_max", 200L), ps, p.value("threshold", 50.0));
  }
  if (name == "prop1-identity") {
    std::vector<MetricMeasureSpace> comps;
    if (p.contains("components")) {
      for (const auto& d : p["components"]) comps.push_back(build_space(d));
    } else {
      comps = {basic_s({2, Rational(3, 2), 2}), basic_t({2, Rational(5, 2), 3}), basic_s({4, Rational(7, 4), 5})};
    }
    const Rational k0 = rat(p, "k0", "2");
    return run_prop1_identity(comps, k0, p.contains("k") ? rational_from_json(p["k"]) : k0,
                              p.value("trials", 100L), seed);
  }
  if (name == "example1-family") {
    Profile hc;
    hc.nodes = p.contains("nodes") ? pairs(p["nodes"])
                                   : std::vector<std::pair<Rational, Rational>>{{1, 2}, {Rational(3, 2), 2}};
    auto samples = p.contains("samples") ? pairs(p["samples"])
                                         : std::vector<std::pair<Rational, Rational>>{{Rational(5, 4), Rational(3, 2)}};
    return run_example1(hc, samples, p.value("n_max", 200L), rat(p, "margin", "1"), p.value("t_div", 100.0));
  }
  if (name == "sweep") {
    auto res = sweep(sweep_spec_from_json(p));
    Report rep;
    rep.experiment = "sweep";
    rep.params = p;
    std::ostringstream csv;
    write_sweep_csv(csv, res.rows);
    rep.data = {{"csv", csv.str()}, {"witnesses", res.witnesses}};
    bool consistent = true;
    for (const auto& r : res.rows)
      if (r.analytic_upper && !approx_le(r.lower_bound, *r.analytic_upper)) consistent = false;
    rep.check("lower <= analytic upper wherever both exist", consistent);
    return rep;
  }
  throw std::invalid_argument("unknown experiment " + name);
}

}  // namespace maxlab
