#include "maxlab/constants.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "maxlab/json_util.hpp"

namespace maxlab {

const char* to_string(NormKind kind) { return kind == NormKind::weak ? "weak" : "strong"; }

NormKind parse_norm_kind(std::string_view text) {
  if (text == "weak") return NormKind::weak;
  if (text == "strong") return NormKind::strong;
  throw std::invalid_argument("norm kind must be weak or strong, got " + std::string(text));
}

Rational average_on_set(const MetricMeasureSpace& space, const TestFunction& f,
                        const std::vector<std::size_t>& E) {
  if (E.empty()) throw std::invalid_argument("average over an empty set");
  Rational mass = 0, w = 0;
  for (auto i : E) {
    mass += f.at(i) * space.weight(i);
    w += space.weight(i);
  }
  return mass / w;
}

namespace {

double root(const Rational& x, const Rational& p) { return std::pow(to_double(x), 1.0 / to_double(p)); }

// sum of v^p w, exact for integer p.
Rational power_sum(const std::vector<Rational>& v, const std::vector<Rational>& w, long p) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s += pow_int(v[i], p) * w[i];
  return s;
}

double power_sum_double(const std::vector<Rational>& v, const std::vector<Rational>& w, double p) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s += std::pow(to_double(v[i]), p) * to_double(w[i]);
  return s;
}

}  // namespace

RatioResult ratio_from_values(const std::vector<Rational>& g, const std::vector<Rational>& f,
                              const std::vector<Rational>& measure, const LpExponent& p, NormKind kind) {
  if (g.size() != f.size() || f.size() != measure.size())
    throw std::invalid_argument("ratio inputs differ in length");
  if (std::all_of(f.begin(), f.end(), [](const Rational& v) { return v == 0; }))
    throw std::invalid_argument("ratio of the zero function");

  RatioResult out;
  out.p = p;
  out.kind = kind;

  if (p.is_infinite()) {
    const Rational gmax = *std::max_element(g.begin(), g.end());
    const Rational fmax = *std::max_element(f.begin(), f.end());
    out.level = gmax;
    out.level_measure = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] == gmax) out.level_measure += measure[i];
    out.value = to_double(Rational(gmax / fmax));
    return out;
  }

  const Rational& pv = p.value();
  const bool integral = p.is_integer();
  const long pi = integral ? pv.get_num().get_si() : 0;
  std::optional<Rational> fsum;
  double fsum_d = 0;
  if (integral) {
    fsum = power_sum(f, measure, pi);
    out.f_power_sum = fsum;
  } else {
    fsum_d = power_sum_double(f, measure, pv.get_d());
  }

  if (kind == NormKind::strong) {
    if (integral) {
      out.g_power_sum = power_sum(g, measure, pi);
      out.value = root(*out.g_power_sum / *fsum, pv);
    } else {
      out.value = std::pow(power_sum_double(g, measure, pv.get_d()) / fsum_d, 1.0 / pv.get_d());
    }
    return out;
  }

  // weak: max over levels v of v * mu({g >= v})^(1/p), compared exactly as v^a mu^b for p = a/b
  std::map<Rational, Rational> level_mass;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] > 0) level_mass[g[i]] += measure[i];
  const long a = pv.get_num().get_si();
  const long b = pv.get_den().get_si();
  Rational cumulative = 0;
  Rational best_key = -1;
  for (auto it = level_mass.rbegin(); it != level_mass.rend(); ++it) {
    cumulative += it->second;
    Rational key = pow_int(it->first, a) * pow_int(cumulative, b);
    if (key > best_key) {
      best_key = key;
      out.level = it->first;
      out.level_measure = cumulative;
    }
  }
  if (best_key < 0) return out;  // g vanishes
  if (integral)
    out.value = root(Rational(pow_int(out.level, pi) * out.level_measure / *fsum), pv);
  else
    out.value = std::exp(std::log(to_double(out.level)) +
                         (std::log(to_double(out.level_measure)) - std::log(fsum_d)) / pv.get_d());
  return out;
}

namespace {

std::vector<Rational> weight_vector(const MetricMeasureSpace& space) {
  return {space.weights().begin(), space.weights().end()};
}

}  // namespace

RatioResult ratio(const MaximalOperator& M, const MetricMeasureSpace& space, const LpExponent& p,
                  NormKind kind, OpKind op, const TestFunction& f) {
  auto g = M.apply(op, f);
  auto r = ratio_from_values(g.values, f, weight_vector(space), p, kind);
  r.op = op;
  r.k = M.k();
  return r;
}

RatioResult ratio(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p, NormKind kind,
                  OpKind op, const TestFunction& f) {
  return ratio(MaximalOperator(space, k), space, p, kind, op, f);
}

RatioResult weak_ratio(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p, OpKind op,
                       const TestFunction& f) {
  return ratio(space, k, p, NormKind::weak, op, f);
}

RatioResult strong_ratio(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p, OpKind op,
                         const TestFunction& f) {
  return ratio(space, k, p, NormKind::strong, op, f);
}

RatioResult lumped_ratio(const LumpedSpace& space, const Rational& k, const LpExponent& p, NormKind kind,
                         OpKind op, const std::vector<Rational>& f) {
  auto g = lumped_maximal(space, op, k, f);
  std::vector<Rational> measure;
  for (std::size_t c = 0; c < space.classes(); ++c) measure.push_back(space.class_measure(c));
  auto r = ratio_from_values(g, f, measure, p, kind);
  r.op = op;
  r.k = k;
  return r;
}

LumpedBound lumped_lower_bound(const LumpedSpace& space, const Rational& k, const LpExponent& p,
                               NormKind kind, OpKind op) {
  LumpedBound best;
  bool set = false;
  auto consider = [&](std::vector<Rational> f) {
    double v = lumped_ratio(space, k, p, kind, op, f).value;
    if (!set || v > best.value) {
      best = {v, std::move(f)};
      set = true;
    }
  };
  for (std::size_t c = 0; c < space.classes(); ++c) {
    std::vector<Rational> f(space.classes(), Rational(0));
    f[c] = 1;
    consider(std::move(f));
  }
  consider(std::vector<Rational>(space.classes(), Rational(1)));
  return best;
}

namespace {

std::optional<AnalyticUpper> upper_for(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p,
                                       NormKind kind, OpKind op) {
  auto q = upper_query_for(space, k, p, kind, op);
  if (!q) return std::nullopt;
  try {
    return analytic_upper(*q);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

ConstantEstimate delta_scan(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p,
                            NormKind kind, OpKind op) {
  MaximalOperator M(space, k);
  ConstantEstimate est{k, p, kind, op, 0, {}, upper_for(space, k, p, kind, op), {}};
  est.log.method = "delta_scan";
  for (std::size_t x = 0; x < space.size(); ++x) {
    auto f = delta(space, x);
    double v = ratio(M, space, p, kind, op, f).value;
    ++est.log.evaluations;
    if (x == 0 || v > est.lower_bound) {
      est.lower_bound = v;
      est.witness = std::move(f);
    }
  }
  return est;
}

namespace {

struct Chain {
  double value = 0;
  TestFunction f;
  long evaluations = 0;
};

Chain climb(const MaximalOperator& M, const MetricMeasureSpace& space, const LpExponent& p, NormKind kind,
            OpKind op, TestFunction f, std::mt19937_64& rng, long iters) {
  Chain c{ratio(M, space, p, kind, op, f).value, std::move(f), 1};
  const std::size_t n = c.f.size();
  std::uniform_int_distribution<std::size_t> coord(0, n - 1);
  std::bernoulli_distribution up(0.5);
  const Rational tiny = pow_int(Rational(2), -10);
  for (long it = 0; it < iters; ++it) {
    const std::size_t i = coord(rng);
    const bool grow = up(rng);
    TestFunction g = c.f;
    if (g[i] == 0) {
      if (!grow) continue;
      g[i] = *std::max_element(g.begin(), g.end()) * tiny;
    } else {
      g[i] = grow ? Rational(g[i] * 2) : Rational(g[i] / 2);
    }
    double v = ratio(M, space, p, kind, op, g).value;
    ++c.evaluations;
    if (v > c.value) {
      c.value = v;
      c.f = std::move(g);
    }
  }
  return c;
}

}  // namespace

ConstantEstimate ascent_search(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p,
                               NormKind kind, OpKind op, long restarts, long iters, std::uint64_t seed) {
  if (restarts < 1 || iters < 1) throw std::invalid_argument("restarts and iters must be >= 1");
  const MaximalOperator M(space, k);
  const auto start = delta_scan(space, k, p, kind, op);
  const std::size_t chains = static_cast<std::size_t>(restarts) + 2;
  std::vector<Chain> results(chains);
  parallel_for(chains, [&](std::size_t idx) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(idx)};
    std::mt19937_64 rng(seq);
    TestFunction f0;
    if (idx == 0)
      f0 = start.witness;
    else if (idx == 1)
      f0 = constant_function(space, 1);
    else
      f0 = random_function(space.size(), rng);
    results[idx] = climb(M, space, p, kind, op, std::move(f0), rng, iters);
  });

  ConstantEstimate est{k, p, kind, op, 0, {}, start.analytic_upper, {}};
  est.log = {"ascent", restarts, iters, seed, start.log.evaluations, -2};
  for (std::size_t idx = 0; idx < chains; ++idx) {
    est.log.evaluations += results[idx].evaluations;
    if (idx == 0 || results[idx].value > est.lower_bound) {
      est.lower_bound = results[idx].value;
      est.witness = results[idx].f;
      est.log.best_restart = static_cast<long>(idx) - 2;
    }
  }
  return est;
}

namespace {

double pw(double base, double e) { return std::pow(base, e); }

AnalyticUpper k_at_least_d(const LpExponent& p, NormKind kind) {
  if (p.is_infinite()) return {1.0, "sup_norm"};
  const double pd = p.as_double();
  if (kind == NormKind::weak) return {pw(2, (pd - 1) / pd), "two_layer_pointwise_weak"};
  return {2.0, "two_layer_pointwise_strong"};
}

}  // namespace

std::optional<AnalyticUpper> analytic_upper(const UpperQuery& q) {
  if (q.k < 1) throw std::invalid_argument("k must be >= 1");
  if (q.space_kind == "basic_s" || q.space_kind == "basic_t") {
    const BasicKind bk = q.space_kind == "basic_s" ? BasicKind::S : BasicKind::T;
    check_basic_params(bk, q.basic);
    if (q.p.is_infinite()) return AnalyticUpper{1.0, "sup_norm"};
    const double p = q.p.as_double();
    const double tm = to_double(Rational(q.basic.tau)) * pw(to_double(q.basic.m), 1 - p);
    if (bk == BasicKind::T && q.op == OpKind::centered)
      return AnalyticUpper{pw(pw(2, 2 * p - 1) * (pw(3, p) + 3), 1 / p), "two_layer_centered"};
    if (q.k >= q.basic.d) return k_at_least_d(q.p, q.kind);
    if (bk == BasicKind::S)
      return AnalyticUpper{pw(pw(2, p - 1) * (pw(2, p - 1) + 1 + tm), 1 / p), "star_split"};
    return AnalyticUpper{
        pw(3 * pw(5, p - 1) * (2 + pw(3, p) + pw(6, p) + pw(3, p) * pw(2, 2 * p - 1) * tm), 1 / p),
        "two_layer_noncentered"};
  }
  if (q.space_kind == "segment_lemma2" || q.space_kind == "segment_lemma3") {
    const bool two = q.space_kind == "segment_lemma2";
    const Rational need = two ? 2 : 3;
    if (q.space_k < need)
      throw std::invalid_argument(q.space_kind + ": construction k must be >= " + to_string(need));
    if (q.k < q.space_k)
      throw std::invalid_argument(q.space_kind + ": bound holds only for k >= the construction k");
    if (q.p.is_infinite()) return AnalyticUpper{1.0, "sup_norm"};
    if (q.p.value() != 1) return std::nullopt;
    if (two && q.kind == NormKind::weak) return AnalyticUpper{2.0, "segment_covering_weak"};
    if (!two && q.op == OpKind::centered) return AnalyticUpper{4.0, "segment_geometric_centered"};
    return std::nullopt;
  }
  if (q.space_kind == "one_point") return AnalyticUpper{1.0, "one_point"};
  throw std::invalid_argument("no analytic bound for space kind " + q.space_kind);
}

std::optional<UpperQuery> upper_query_for(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p,
                                          NormKind kind, OpKind op) {
  auto desc = parse_provenance(space.provenance());
  const std::string sk = desc.at("kind").get<std::string>();
  const auto& params = desc.value("params", nlohmann::json::object());
  UpperQuery q;
  q.space_kind = sk;
  q.k = k;
  q.p = p;
  q.kind = kind;
  q.op = op;
  if (sk == "basic_s" || sk == "basic_t") {
    q.basic.tau = Integer(params.at("tau").get<std::string>());
    q.basic.d = rational_from_json(params.at("d"));
    q.basic.m = rational_from_json(params.at("m"));
    return q;
  }
  if (sk == "segment_lemma2" || sk == "segment_lemma3") {
    q.space_k = rational_from_json(params.at("k"));
    return q;
  }
  if (sk == "one_point") return q;
  return std::nullopt;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("MAXLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

thread_local bool in_worker = false;

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = in_worker ? 1 : std::min<std::size_t>(worker_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      in_worker = true;
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace maxlab
