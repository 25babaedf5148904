#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxlab/constructions.hpp"
#include "maxlab/lumped.hpp"
#include "maxlab/maximal.hpp"
#include "maxlab/rational.hpp"
#include "maxlab/space.hpp"

namespace maxlab {

enum class NormKind { weak, strong };

const char* to_string(NormKind kind);
NormKind parse_norm_kind(std::string_view text);

struct RatioResult {
  LpExponent p;
  NormKind kind = NormKind::weak;
  OpKind op = OpKind::centered;
  Rational k;
  double value = 0;
  // weak: the maximizing level and the measure of {g >= level}
  Rational level;
  Rational level_measure;
  // strong with integer p: sum of g^p w and of f^p w
  std::optional<Rational> g_power_sum;
  std::optional<Rational> f_power_sum;
};

struct AnalyticUpper {
  double value = 0;
  std::string formula;
};

struct SearchLog {
  std::string method;  // "delta_scan" or "ascent"
  long restarts = 0;
  long iters = 0;
  std::uint64_t seed = 0;
  long evaluations = 0;
  long best_restart = -1;  // -2: delta start, -1: uniform start, r >= 0: random restart r
};

struct ConstantEstimate {
  Rational k;
  LpExponent p;
  NormKind kind = NormKind::weak;
  OpKind op = OpKind::centered;
  double lower_bound = 0;
  TestFunction witness;
  std::optional<AnalyticUpper> analytic_upper;
  SearchLog log;
};

Rational average_on_set(const MetricMeasureSpace& space, const TestFunction& f,
                        const std::vector<std::size_t>& E);

/// Ratio of g = M f against f given per-atom measures. g, f, measure have
/// equal length; f must not vanish identically.
RatioResult ratio_from_values(const std::vector<Rational>& g, const std::vector<Rational>& f,
                              const std::vector<Rational>& measure, const LpExponent& p,
                              NormKind kind);

RatioResult weak_ratio(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p,
                       OpKind op, const TestFunction& f);
RatioResult strong_ratio(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p,
                         OpKind op, const TestFunction& f);
RatioResult ratio(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p,
                  NormKind kind, OpKind op, const TestFunction& f);
/// Same, reusing a prepared operator.
RatioResult ratio(const MaximalOperator& M, const MetricMeasureSpace& space, const LpExponent& p,
                  NormKind kind, OpKind op, const TestFunction& f);

/// Ratio of a class-constant function on a lumped space.
RatioResult lumped_ratio(const LumpedSpace& space, const Rational& k, const LpExponent& p,
                         NormKind kind, OpKind op, const std::vector<Rational>& f);

/// Best ratio over class indicators and the constant function.
struct LumpedBound {
  double value = 0;
  std::vector<Rational> witness;
};
LumpedBound lumped_lower_bound(const LumpedSpace& space, const Rational& k, const LpExponent& p,
                               NormKind kind, OpKind op);

ConstantEstimate delta_scan(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p,
                            NormKind kind, OpKind op);

/// Multiplicative coordinate ascent from the best delta, from the constant
/// function and from `restarts` random log-uniform starts, `iters` proposals
/// each. Deterministic in `seed`; honours MAXLAB_THREADS.
ConstantEstimate ascent_search(const MetricMeasureSpace& space, const Rational& k, const LpExponent& p,
                               NormKind kind, OpKind op, long restarts, long iters,
                               std::uint64_t seed);

struct UpperQuery {
  std::string space_kind;  // basic_s, basic_t, segment_lemma2, segment_lemma3, one_point
  BasicParams basic;       // basic spaces
  Rational space_k = 0;    // construction k of segment presets
  Rational k;
  LpExponent p;
  NormKind kind = NormKind::weak;
  OpKind op = OpKind::centered;
};

/// Closed-form upper bounds for the supported constructions, if one is known
/// for the regime. Throws std::invalid_argument when the query does not
/// match the construction (e.g. k below the segment preset's k).
std::optional<AnalyticUpper> analytic_upper(const UpperQuery& query);

/// The query matching a space's provenance, if it is one of the supported kinds.
std::optional<UpperQuery> upper_query_for(const MetricMeasureSpace& space, const Rational& k,
                                          const LpExponent& p, NormKind kind, OpKind op);

/// Log-uniform on [2^-10, 2^10], rounded to a multiple of 2^-20.
template <class Rng>
TestFunction random_function(std::size_t n, Rng& rng);

/// Number of worker threads: MAXLAB_THREADS if set and positive, else the
/// hardware concurrency.
unsigned worker_threads();

/// Runs task(i) for i in [0, n) on up to worker_threads() threads. Results
/// are indexed, so the schedule never affects the output.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace maxlab

#include <cmath>
#include <random>

namespace maxlab {

template <class Rng>
TestFunction random_function(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  TestFunction f(n);
  for (auto& v : f) v = dyadic_round(std::exp2(u(rng)), 20);
  return f;
}

}  // namespace maxlab
