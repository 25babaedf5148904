#include "maxlab/constructions.hpp"

#include <algorithm>
#include <stdexcept>

#include "maxlab/json_util.hpp"

namespace maxlab {

using nlohmann::json;

namespace {

json table_to_json(const BranchTable& t) {
  json rows = json::array();
  for (const auto& row : t) {
    json r = json::array();
    for (const auto& q : row) r.push_back(to_string(q));
    rows.push_back(std::move(r));
  }
  return rows;
}

Rational power_of_two(long e) { return pow_int(Rational(2), e); }

Rational row_sum(const std::vector<Rational>& row) {
  Rational s = 0;
  for (const auto& q : row) s += q;
  return s;
}

// Dense matrix filled by a symmetric rule over ordered point indices.
template <class DistFn>
std::vector<Rational> dense_metric(std::size_t n, DistFn&& fn) {
  std::vector<Rational> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = fn(i, j);
  return d;
}

void check_table(const BranchTable& F, const std::vector<long>& tau, const char* what) {
  if (tau.empty()) throw std::invalid_argument(std::string(what) + ": empty tau sequence");
  if (F.size() != tau.size())
    throw std::invalid_argument(std::string(what) + ": F must have one row per branch");
  for (std::size_t n = 0; n < tau.size(); ++n) {
    if (tau[n] < 1) throw std::invalid_argument(std::string(what) + ": tau_n must be >= 1");
    if (F[n].size() != static_cast<std::size_t>(tau[n]))
      throw std::invalid_argument(std::string(what) + ": row " + std::to_string(n + 1) +
                                  " of F must have tau_n entries");
    for (const auto& q : F[n])
      if (q <= 0) throw std::invalid_argument(std::string(what) + ": F must be positive");
  }
}

std::size_t checked_atoms(const Integer& n) {
  if (n > static_cast<unsigned long>(kMaxDenseAtoms))
    throw std::length_error("space with " + n.get_str() + " atoms exceeds the dense limit of " +
                            std::to_string(kMaxDenseAtoms));
  return n.get_ui();
}

}  // namespace

BranchTable constant_table(const std::vector<long>& tau, const Rational& value) {
  BranchTable t;
  for (long c : tau) t.emplace_back(static_cast<std::size_t>(std::max(c, 0L)), value);
  return t;
}

MetricMeasureSpace first_generation(const FirstGenParams& params) {
  check_table(params.F, params.tau, "first_generation");
  std::vector<PointLabel> labels;
  std::vector<Rational> weight;
  std::vector<long> branch;   // n of each point
  std::vector<bool> is_hub;   // x_n
  Rational previous = 0;
  for (std::size_t b = 0; b < params.tau.size(); ++b) {
    const long n = static_cast<long>(b) + 1;
    // d_n (1 + sum_i F(n,i)) = mu(S_{n-1}) / 2
    Rational factor = 1 + row_sum(params.F[b]);
    Rational d = n == 1 ? Rational(1) : Rational(previous / (2 * factor));
    if (d <= 0) throw std::logic_error("first_generation: nonpositive d_n");
    labels.push_back({"x", {n}});
    weight.push_back(d);
    branch.push_back(n);
    is_hub.push_back(true);
    for (long i = 1; i <= params.tau[b]; ++i) {
      labels.push_back({"x", {n, i}});
      weight.push_back(d * params.F[b][i - 1]);
      branch.push_back(n);
      is_hub.push_back(false);
    }
    previous = d * factor;
  }
  auto dist = dense_metric(weight.size(), [&](std::size_t i, std::size_t j) {
    bool near = branch[i] == branch[j] && (is_hub[i] || is_hub[j]);
    return Rational(near ? 1 : 2);
  });
  json desc = {{"kind", "first_generation"},
               {"params", {{"tau", params.tau}, {"F", table_to_json(params.F)}}}};
  return {std::move(labels), std::move(dist), std::move(weight), desc.dump()};
}

MetricMeasureSpace second_generation(const SecondGenParams& params) {
  check_table(params.F_star, params.tau_star, "second_generation");
  enum Role { hub, inner, outer };
  struct Info {
    long n;
    long i;
    Role role;
  };
  std::vector<PointLabel> labels;
  std::vector<Rational> weight;
  std::vector<Info> info;
  Rational previous = 0;
  for (std::size_t b = 0; b < params.tau_star.size(); ++b) {
    const long n = static_cast<long>(b) + 1;
    const long tau = params.tau_star[b];
    // mu(T_n) = d*_n (1 + tau * (1/tau) + sum_i F*(n,i))
    Rational factor = 2 + row_sum(params.F_star[b]);
    Rational d = n == 1 ? Rational(1) : Rational(previous / (2 * factor));
    if (d <= 0) throw std::logic_error("second_generation: nonpositive d*_n");
    labels.push_back({"y", {n}});
    weight.push_back(d);
    info.push_back({n, 0, hub});
    for (long i = 1; i <= tau; ++i) {
      labels.push_back({"y", {n, i}});
      weight.push_back(d / tau);
      info.push_back({n, i, inner});
      labels.push_back({"y'", {n, i}});
      weight.push_back(d * params.F_star[b][i - 1]);
      info.push_back({n, i, outer});
    }
    previous = d * factor;
  }
  auto dist = dense_metric(weight.size(), [&](std::size_t a, std::size_t b) {
    const Info& x = info[a];
    const Info& y = info[b];
    bool unit = false;
    if (x.n == y.n) {
      if (x.role != hub && y.role != hub && x.i == y.i) unit = true;  // {x,y} = T_ni
      if ((x.role == hub && y.role == inner) || (y.role == hub && x.role == inner)) unit = true;
    }
    return Rational(unit ? 1 : 2);
  });
  json desc = {{"kind", "second_generation"},
               {"params", {{"tau_star", params.tau_star}, {"F_star", table_to_json(params.F_star)}}}};
  return {std::move(labels), std::move(dist), std::move(weight), desc.dump()};
}

MetricMeasureSpace lemma1_modify(const MetricMeasureSpace& space) {
  const std::size_t n = space.size();
  std::vector<std::vector<std::size_t>> unit(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational& d = space.dist(i, j);
      if (d != 1 && d != 2)
        throw std::invalid_argument("lemma1_modify: metric must take only the values 1 and 2");
      if (d == 1) unit[i].push_back(j);
    }
  std::vector<char> adj(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : unit[i]) adj[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : unit[i])
      for (auto l : unit[j])
        if (l != i && adj[i * n + l])
          throw std::invalid_argument("lemma1_modify: unit-distance triangle {" +
                                      space.label(i).str() + ", " + space.label(j).str() + ", " +
                                      space.label(l).str() + "}");
  auto dist = dense_metric(n, [&](std::size_t i, std::size_t j) {
    if (adj[i * n + j]) return Rational(1);
    for (auto z : unit[i])
      if (adj[j * n + z]) return Rational(2);
    return Rational(3);
  });
  json desc = {{"kind", "lemma1_modify"}, {"params", {{"base", parse_provenance(space.provenance())}}}};
  return {{space.labels().begin(), space.labels().end()}, std::move(dist),
          {space.weights().begin(), space.weights().end()}, desc.dump()};
}

MetricMeasureSpace segment_type(const SegmentParams& params) {
  if (params.d.empty() || params.d.size() != params.F.size())
    throw std::invalid_argument("segment_type: d and F need one row per branch");
  std::vector<PointLabel> labels;
  std::vector<Rational> weight;
  std::vector<long> branch;
  std::vector<Rational> position;  // distance from x_{n,0}
  for (std::size_t b = 0; b < params.d.size(); ++b) {
    const long n = static_cast<long>(b) + 1;
    const auto& d = params.d[b];
    const auto& F = params.F[b];
    if (d.size() != static_cast<std::size_t>(n) || F.size() != static_cast<std::size_t>(n) + 1)
      throw std::invalid_argument("segment_type: branch " + std::to_string(n) +
                                  " needs n gaps and n+1 weights");
    for (const auto& q : d)
      if (q <= 0) throw std::invalid_argument("segment_type: d_{n,i} must be positive");
    for (const auto& q : F)
      if (q <= 0) throw std::invalid_argument("segment_type: F(n,i) must be positive");
    if (row_sum(d) > 1)
      throw std::invalid_argument("segment_type: sum of d_{n,i} exceeds 1 on branch " +
                                  std::to_string(n));
    if (row_sum(F) > power_of_two(-n))
      throw std::invalid_argument("segment_type: sum of F(n,i) exceeds 2^-n on branch " +
                                  std::to_string(n));
    Rational pos = 0;
    for (long i = 0; i <= n; ++i) {
      if (i > 0) pos += d[i - 1];
      labels.push_back({"x", {n, i}});
      weight.push_back(F[i]);
      branch.push_back(n);
      position.push_back(pos);
    }
  }
  auto dist = dense_metric(weight.size(), [&](std::size_t i, std::size_t j) {
    if (branch[i] != branch[j]) return Rational(1);
    Rational diff = position[i] - position[j];
    return Rational(abs(diff));
  });
  json desc = {{"kind", "segment"},
               {"params", {{"d", table_to_json(params.d)}, {"F", table_to_json(params.F)}}}};
  return {std::move(labels), std::move(dist), std::move(weight), desc.dump()};
}

SegmentParams segment_lemma2_params(const Rational& k, long n_max) {
  if (k < 2) throw std::invalid_argument("segment_lemma2: k must be >= 2");
  if (n_max < 1) throw std::invalid_argument("segment_lemma2: n_max must be >= 1");
  SegmentParams p;
  for (long n = 1; n <= n_max; ++n) {
    std::vector<Rational> d, F;
    for (long i = 1; i <= n; ++i) d.push_back(pow_int(Rational(k + 1), i - n - 1));
    Rational w = power_of_two(-n) / (n + 1);
    F.assign(static_cast<std::size_t>(n) + 1, w);
    p.d.push_back(std::move(d));
    p.F.push_back(std::move(F));
  }
  return p;
}

SegmentParams segment_lemma3_params(const Rational& k, long n_max) {
  if (k < 3) throw std::invalid_argument("segment_lemma3: k must be >= 3");
  if (n_max < 1) throw std::invalid_argument("segment_lemma3: n_max must be >= 1");
  SegmentParams p;
  const Rational base = k - Rational(1, 2);
  for (long n = 1; n <= n_max; ++n) {
    std::vector<Rational> d;
    for (long i = 1; i <= n; ++i) d.push_back(pow_int(base, i - n - 1));
    std::vector<Rational> F(static_cast<std::size_t>(n) + 1);
    F[n] = power_of_two(-n - 1);
    for (long i = n - 1; i >= 0; --i) F[i] = F[i + 1] * power_of_two(-(i + 1));
    p.d.push_back(std::move(d));
    p.F.push_back(std::move(F));
  }
  return p;
}

namespace {

MetricMeasureSpace with_descriptor(MetricMeasureSpace space, const json& desc) {
  std::vector<Rational> dist;
  dist.reserve(space.size() * space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    for (const auto& q : space.row(i)) dist.push_back(q);
  return {{space.labels().begin(), space.labels().end()}, std::move(dist),
          {space.weights().begin(), space.weights().end()}, desc.dump()};
}

}  // namespace

MetricMeasureSpace segment_preset_lemma2(const Rational& k, long n_max) {
  return with_descriptor(segment_type(segment_lemma2_params(k, n_max)),
                         {{"kind", "segment_lemma2"}, {"params", {{"k", to_string(k)}, {"n_max", n_max}}}});
}

MetricMeasureSpace segment_preset_lemma3(const Rational& k, long n_max) {
  return with_descriptor(segment_type(segment_lemma3_params(k, n_max)),
                         {{"kind", "segment_lemma3"}, {"params", {{"k", to_string(k)}, {"n_max", n_max}}}});
}

void check_basic_params(BasicKind kind, const BasicParams& p) {
  const Rational d_max = kind == BasicKind::S ? 2 : 3;
  const char* name = kind == BasicKind::S ? "basic_s" : "basic_t";
  if (p.tau < 1) throw std::invalid_argument(std::string(name) + ": tau must be >= 1");
  if (!(p.d > 1 && p.d <= d_max))
    throw std::invalid_argument(std::string(name) + ": d must lie in (1, " + to_string(d_max) + "]");
  if (p.m <= 1) throw std::invalid_argument(std::string(name) + ": m must be > 1");
}

namespace {

json basic_descriptor(const char* kind, const BasicParams& p) {
  return {{"kind", kind},
          {"params", {{"tau", p.tau.get_str()}, {"d", to_string(p.d)}, {"m", to_string(p.m)}}}};
}

}  // namespace

MetricMeasureSpace basic_s(const BasicParams& p) {
  check_basic_params(BasicKind::S, p);
  const std::size_t tau = checked_atoms(p.tau + 1) - 1;
  std::vector<PointLabel> labels;
  std::vector<Rational> weight;
  labels.push_back({"x", {0}});
  weight.emplace_back(1);
  for (std::size_t i = 1; i <= tau; ++i) {
    labels.push_back({"x", {static_cast<long>(i)}});
    weight.push_back(p.m);
  }
  auto dist = dense_metric(tau + 1, [&](std::size_t i, std::size_t) {
    return i == 0 ? Rational(1) : p.d;
  });
  return {std::move(labels), std::move(dist), std::move(weight), basic_descriptor("basic_s", p).dump()};
}

MetricMeasureSpace basic_t(const BasicParams& p) {
  check_basic_params(BasicKind::T, p);
  const std::size_t tau = (checked_atoms(2 * p.tau + 1) - 1) / 2;
  // Order: y_0, yo_1..yo_tau, y'_1..y'_tau.
  std::vector<PointLabel> labels;
  std::vector<Rational> weight;
  labels.push_back({"y", {0}});
  weight.emplace_back(1);
  for (std::size_t i = 1; i <= tau; ++i) {
    labels.push_back({"yo", {static_cast<long>(i)}});
    weight.emplace_back(Rational(1) / Rational(p.tau));
  }
  for (std::size_t i = 1; i <= tau; ++i) {
    labels.push_back({"y'", {static_cast<long>(i)}});
    weight.push_back(p.m);
  }
  const Rational mid = (p.d + 1) / 2;
  auto group = [&](std::size_t a) { return a == 0 ? 0 : (a <= tau ? 1 : 2); };  // hub, Y°, Y'
  auto index = [&](std::size_t a) { return a <= tau ? a : a - tau; };
  auto dist = dense_metric(2 * tau + 1, [&](std::size_t a, std::size_t b) {
    int ga = group(a), gb = group(b);
    if ((ga == 0 && gb == 1) || (ga == 1 && gb == 0)) return Rational(1);
    if (ga != 0 && gb != 0 && ga != gb && index(a) == index(b)) return Rational(1);  // Y_i
    if (ga == 1 && gb == 1) return mid;                                              // within Y°
    if (ga != 1 && gb != 1) return mid;                                              // within Y \ Y°
    return p.d;
  });
  return {std::move(labels), std::move(dist), std::move(weight), basic_descriptor("basic_t", p).dump()};
}

MetricMeasureSpace basic(BasicKind kind, const BasicParams& params) {
  return kind == BasicKind::S ? basic_s(params) : basic_t(params);
}

namespace {

struct GlueScale {
  Rational metric;
  Rational measure;
};

GlueScale glue_scale(const MetricMeasureSpace& component, long n) {
  Rational diam = diameter(component);
  Rational mu = total_measure(component);
  Rational cap = power_of_two(-n);
  return {diam > 1 ? Rational(1 / diam) : Rational(1), mu > cap ? Rational(cap / mu) : Rational(1)};
}

}  // namespace

std::vector<MetricMeasureSpace> glue_rescaled_components(const GlueParams& params) {
  std::vector<MetricMeasureSpace> out;
  long n = 1;
  for (const auto& c : params.components) {
    auto s = glue_scale(c, n++);
    out.push_back(scale_measure(scale_metric(c, s.metric), s.measure));
  }
  return out;
}

std::pair<std::size_t, std::size_t> glue_component_range(const GlueParams& params, std::size_t n) {
  if (n < 1 || n > params.components.size()) throw std::out_of_range("glue component index");
  std::size_t begin = 0;
  for (std::size_t c = 0; c + 1 < n; ++c) begin += params.components[c].size();
  return {begin, begin + params.components[n - 1].size()};
}

MetricMeasureSpace glue(const GlueParams& params) {
  if (params.k0 < 1) throw std::invalid_argument("glue: k0 must be >= 1");
  if (params.components.empty()) throw std::invalid_argument("glue: no components");
  std::size_t total = 0;
  for (const auto& c : params.components) total += c.size();
  checked_atoms(Integer(static_cast<unsigned long>(total)));

  std::vector<PointLabel> labels;
  std::vector<Rational> weight;
  std::vector<std::size_t> owner;
  json comps = json::array(), scales = json::array();
  long n = 1;
  for (const auto& c : params.components) {
    auto s = glue_scale(c, n);
    for (std::size_t i = 0; i < c.size(); ++i) {
      PointLabel l = c.label(i);
      l.role = "c" + std::to_string(n) + "/" + l.role;
      labels.push_back(std::move(l));
      weight.push_back(c.weight(i) * s.measure);
      owner.push_back(static_cast<std::size_t>(n));
    }
    comps.push_back(parse_provenance(c.provenance()));
    scales.push_back({{"metric", to_string(s.metric)}, {"measure", to_string(s.measure)}});
    ++n;
  }
  const Rational far = params.k0 + 1;
  std::vector<Rational> dist(total * total);
  std::size_t offset = 0;
  n = 1;
  for (const auto& c : params.components) {
    auto s = glue_scale(c, n++);
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) dist[(offset + i) * total + offset + j] = c.dist(i, j) * s.metric;
    offset += c.size();
  }
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (owner[i] != owner[j]) dist[i * total + j] = far;
  json desc = {{"kind", "glue"},
               {"params", {{"k0", to_string(params.k0)}, {"components", comps}}},
               {"scales", scales}};
  return {std::move(labels), std::move(dist), std::move(weight), desc.dump()};
}

namespace {

void check_family(const FamilyParams& p, const Rational& k_cap, const char* name) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(std::string(name) + ": " + what);
  };
  if (!(p.k >= 1 && p.k < k_cap)) fail("k must lie in [1, " + to_string(k_cap) + ")");
  if (p.p < 1) fail("p must be >= 1");
  if (!(p.epsilon > 0 && p.epsilon <= Rational(1, 4))) fail("epsilon must lie in (0, 1/4]");
  if (!(p.delta > 0 && p.delta < k_cap - p.k)) fail("delta must lie in (0, " + to_string(k_cap) + " - k)");
  if (p.N < 1) fail("N must be >= 1");
  if (p.n_min <= p.N) fail("component indices must exceed N");
  if (p.n_max < p.n_min) fail("n_max must be >= n_min");
}

Family lemma6_family(const FamilyParams& p, BasicKind kind, const char* name) {
  check_family(p, kind == BasicKind::S ? 2 : 3, name);
  Family fam;
  fam.k0 = p.k + p.delta;
  // tau_n = ceil(N^(2p)) * floor(n^(p(p-1)/eps)), m_n = ceil(n^(p/eps)).
  const Integer n_pow = ceil_pow(Integer(p.N), Rational(2 * p.p));
  const Rational tau_exp = p.p * (p.p - 1) / p.epsilon;
  const Rational m_exp = p.p / p.epsilon;
  for (long n = p.n_min; n <= p.n_max; ++n) {
    BasicParams b;
    b.tau = n_pow * floor_pow(Integer(n), tau_exp);
    b.d = p.k + p.delta / n;
    b.m = Rational(ceil_pow(Integer(n), m_exp));
    check_basic_params(kind, b);
    fam.members.push_back({n, kind, std::move(b)});
  }
  fam.descriptor = {{"kind", name},
                    {"params",
                     {{"k", to_string(p.k)},
                      {"p", to_string(p.p)},
                      {"epsilon", to_string(p.epsilon)},
                      {"delta", to_string(p.delta)},
                      {"N", p.N},
                      {"n_min", p.n_min},
                      {"n_max", p.n_max}}}};
  return fam;
}

Family lemma7_family(const Rational& k, Lemma7Mode mode, long n_max, BasicKind kind, const char* name) {
  const Rational top = kind == BasicKind::S ? 2 : 3;
  if (mode == Lemma7Mode::strict && !(k > 1 && k <= top))
    throw std::invalid_argument(std::string(name) + ": strict mode needs 1 < k <= " + to_string(top));
  if (mode == Lemma7Mode::weak && !(k >= 1 && k < top))
    throw std::invalid_argument(std::string(name) + ": weak mode needs 1 <= k < " + to_string(top));
  if (n_max < 1) throw std::invalid_argument(std::string(name) + ": n_max must be >= 1");
  Family fam;
  fam.k0 = top;
  for (long n = 1; n <= n_max; ++n) {
    BasicParams b;
    b.tau = n;
    b.d = mode == Lemma7Mode::strict ? k : Rational(k + (top - k) / n);
    b.m = 2;
    check_basic_params(kind, b);
    fam.members.push_back({n, kind, std::move(b)});
  }
  fam.descriptor = {{"kind", name},
                    {"params",
                     {{"k", to_string(k)},
                      {"mode", mode == Lemma7Mode::strict ? "strict" : "weak"},
                      {"n_max", n_max}}}};
  return fam;
}

}  // namespace

Family family_lemma6(const FamilyParams& p) { return lemma6_family(p, BasicKind::S, "family_lemma6"); }
Family family_lemma6p(const FamilyParams& p) { return lemma6_family(p, BasicKind::T, "family_lemma6p"); }
Family family_lemma7(const Rational& k, Lemma7Mode mode, long n_max) {
  return lemma7_family(k, mode, n_max, BasicKind::S, "family_lemma7");
}
Family family_lemma7p(const Rational& k, Lemma7Mode mode, long n_max) {
  return lemma7_family(k, mode, n_max, BasicKind::T, "family_lemma7p");
}

namespace {

BranchTable table_from_json(const json& j, const std::vector<long>& shape) {
  if (j.is_string() || j.is_number_integer()) return constant_table(shape, rational_from_json(j));
  BranchTable t;
  for (const auto& row : j) {
    std::vector<Rational> r;
    for (const auto& q : row) r.push_back(rational_from_json(q));
    t.push_back(std::move(r));
  }
  return t;
}

BranchTable plain_table(const json& j) {
  BranchTable t;
  for (const auto& row : j) {
    std::vector<Rational> r;
    for (const auto& q : row) r.push_back(rational_from_json(q));
    t.push_back(std::move(r));
  }
  return t;
}

BasicParams basic_from_json(const json& p) {
  BasicParams b;
  const auto& tau = p.at("tau");
  b.tau = tau.is_string() ? Integer(tau.get<std::string>()) : Integer(std::to_string(tau.get<long long>()));
  b.d = rational_from_json(p.at("d"));
  b.m = rational_from_json(p.at("m"));
  return b;
}

FamilyParams family_from_json(const json& p) {
  FamilyParams f;
  f.k = rational_from_json(p.at("k"));
  f.p = rational_from_json(p.at("p"));
  f.epsilon = rational_from_json(p.at("epsilon"));
  f.delta = rational_from_json(p.at("delta"));
  f.N = p.at("N").get<long>();
  f.n_min = p.value("n_min", f.N + 1);
  f.n_max = p.value("n_max", 40L);
  return f;
}

Lemma7Mode mode_from_json(const json& p) {
  auto m = p.value("mode", std::string("strict"));
  if (m == "strict") return Lemma7Mode::strict;
  if (m == "weak") return Lemma7Mode::weak;
  throw std::invalid_argument("lemma7 mode must be strict or weak");
}

MetricMeasureSpace glue_family(const Family& fam) {
  GlueParams g{fam.k0, {}};
  for (const auto& m : fam.members) g.components.push_back(basic(m.kind, m.params));
  auto glued = glue(g);
  std::vector<Rational> dist;
  for (std::size_t i = 0; i < glued.size(); ++i)
    for (const auto& q : glued.row(i)) dist.push_back(q);
  return {{glued.labels().begin(), glued.labels().end()}, std::move(dist),
          {glued.weights().begin(), glued.weights().end()}, fam.descriptor.dump()};
}

}  // namespace

MetricMeasureSpace build_space(const json& desc) {
  if (!desc.is_object() || !desc.contains("kind"))
    throw std::invalid_argument("descriptor must be an object with a \"kind\"");
  const std::string kind = desc.at("kind").get<std::string>();
  const json params = desc.value("params", json::object());

  if (kind == "one_point") return one_point_space(params.contains("weight") ? rational_from_json(params["weight"]) : Rational(1));
  if (kind == "explicit") {
    std::vector<PointLabel> labels;
    for (const auto& l : params.at("points")) labels.push_back(PointLabel::parse(l.get<std::string>()));
    std::vector<Rational> dist, weight;
    for (const auto& row : params.at("dist"))
      for (const auto& q : row) dist.push_back(rational_from_json(q));
    for (const auto& q : params.at("weight")) weight.push_back(rational_from_json(q));
    if (!labels.empty() && dist.size() != labels.size() * labels.size())
      throw std::invalid_argument("explicit: dist must be a square matrix over the points");
    return {std::move(labels), std::move(dist), std::move(weight), desc.dump()};
  }
  if (kind == "first_generation") {
    auto tau = params.at("tau").get<std::vector<long>>();
    return first_generation({tau, table_from_json(params.at("F"), tau)});
  }
  if (kind == "second_generation") {
    auto tau = params.at("tau_star").get<std::vector<long>>();
    return second_generation({tau, table_from_json(params.at("F_star"), tau)});
  }
  if (kind == "lemma1_modify") return lemma1_modify(build_space(params.at("base")));
  if (kind == "segment") return segment_type({plain_table(params.at("d")), plain_table(params.at("F"))});
  if (kind == "segment_lemma2")
    return segment_preset_lemma2(rational_from_json(params.at("k")), params.at("n_max").get<long>());
  if (kind == "segment_lemma3")
    return segment_preset_lemma3(rational_from_json(params.at("k")), params.at("n_max").get<long>());
  if (kind == "basic_s") return basic_s(basic_from_json(params));
  if (kind == "basic_t") return basic_t(basic_from_json(params));
  if (kind == "glue") {
    GlueParams g{rational_from_json(params.at("k0")), {}};
    for (const auto& c : params.at("components")) g.components.push_back(build_space(c));
    return glue(g);
  }
  if (kind == "scale_metric") return scale_metric(build_space(params.at("base")), rational_from_json(params.at("c")));
  if (kind == "scale_measure") return scale_measure(build_space(params.at("base")), rational_from_json(params.at("c")));
  if (kind == "family_lemma6") return glue_family(family_lemma6(family_from_json(params)));
  if (kind == "family_lemma6p") return glue_family(family_lemma6p(family_from_json(params)));
  if (kind == "family_lemma7")
    return glue_family(family_lemma7(rational_from_json(params.at("k")), mode_from_json(params), params.at("n_max").get<long>()));
  if (kind == "family_lemma7p")
    return glue_family(family_lemma7p(rational_from_json(params.at("k")), mode_from_json(params), params.at("n_max").get<long>()));
  throw std::invalid_argument("unknown space kind: " + kind);
}

json descriptor_of(const MetricMeasureSpace& space) {
  json j = parse_provenance(space.provenance());
  return {{"kind", j.at("kind")}, {"params", j.value("params", json::object())}};
}

}  // namespace maxlab
