#pragma once

// Reference implementations used only by tests. The maximal operators are
// computed from the level form: a ball B(z, r) with r just above a distance
// level l contains {d <= l} and its dilate shrinks to {d <= k l}, so
//   M^c f(x) = max_l  sum_{d(x,.) <= l} f w / sum_{d(x,.) <= k l} w
// over l in {0} u {d(x, j)}, and M f(x) takes the max over z with d(z,x) <= l.

#include <cmath>
#include <random>
#include <vector>

#include "maxlab/space.hpp"

namespace oracle {

using maxlab::MetricMeasureSpace;
using maxlab::Rational;

inline Rational level_ratio(const MetricMeasureSpace& s, const Rational& k, const std::vector<Rational>& f,
                            std::size_t z, const Rational& l) {
  Rational mass = 0, w = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.dist(z, i) <= l) mass += f[i] * s.weight(i);
    if (s.dist(z, i) <= k * l) w += s.weight(i);
  }
  return mass / w;
}

inline std::vector<Rational> centered(const MetricMeasureSpace& s, const Rational& k,
                                      const std::vector<Rational>& f) {
  std::vector<Rational> out(s.size());
  for (std::size_t x = 0; x < s.size(); ++x) {
    Rational best = level_ratio(s, k, f, x, 0);
    for (std::size_t j = 0; j < s.size(); ++j) {
      Rational v = level_ratio(s, k, f, x, s.dist(x, j));
      if (v > best) best = v;
    }
    out[x] = best;
  }
  return out;
}

inline std::vector<Rational> noncentered(const MetricMeasureSpace& s, const Rational& k,
                                         const std::vector<Rational>& f) {
  std::vector<Rational> out(s.size(), Rational(0));
  for (std::size_t z = 0; z < s.size(); ++z) {
    std::vector<Rational> levels{0};
    for (std::size_t j = 0; j < s.size(); ++j) levels.push_back(s.dist(z, j));
    for (const auto& l : levels) {
      Rational v = level_ratio(s, k, f, z, l);
      for (std::size_t x = 0; x < s.size(); ++x)
        if (s.dist(z, x) <= l && v > out[x]) out[x] = v;
    }
  }
  return out;
}

// sup over lambda of lambda * mu({g > lambda})^(1/p), scanned just below each value of g.
inline double weak_norm(const std::vector<Rational>& g, const std::vector<Rational>& w, double p) {
  double best = 0;
  for (const auto& v : g) {
    double mu = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] >= v) mu += w[i].get_d();
    best = std::max(best, v.get_d() * std::pow(mu, 1 / p));
  }
  return best;
}

inline double strong_norm(const std::vector<Rational>& g, const std::vector<Rational>& w, double p) {
  double s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += std::pow(g[i].get_d(), p) * w[i].get_d();
  return std::pow(s, 1 / p);
}

// Random metric: shortest paths over a random weighted complete graph with
// small-denominator rational edge lengths.
template <class Rng>
MetricMeasureSpace random_space(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<int> num(1, 12), den(1, 4), wnum(1, 9);
  std::vector<Rational> d(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = Rational(num(rng), den(rng));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i * n + l] + d[l * n + j] < d[i * n + j]) d[i * n + j] = d[i * n + l] + d[l * n + j];
  std::vector<Rational> w;
  for (std::size_t i = 0; i < n; ++i) w.emplace_back(wnum(rng), den(rng));
  for (auto& q : d) q.canonicalize();
  for (auto& q : w) q.canonicalize();
  return {{}, std::move(d), std::move(w), R"({"kind":"random"})"};
}

}  // namespace oracle
