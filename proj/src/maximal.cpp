#include "maxlab/maximal.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace maxlab {

const char* to_string(OpKind op) { return op == OpKind::centered ? "c" : "nc"; }

OpKind parse_op_kind(std::string_view text) {
  if (text == "c" || text == "centered") return OpKind::centered;
  if (text == "nc" || text == "noncentered") return OpKind::noncentered;
  throw std::invalid_argument("operator must be c or nc, got " + std::string(text));
}

namespace {

void require_k(const Rational& k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
}

std::vector<Rational> breakpoints(const MetricMeasureSpace& space, const Rational& k,
                                  std::size_t center) {
  std::vector<Rational> D;
  for (const auto& d : space.row(center)) {
    if (d == 0) continue;
    D.push_back(d);
    D.push_back(d / k);
  }
  std::sort(D.begin(), D.end());
  D.erase(std::unique(D.begin(), D.end()), D.end());
  return D;
}

}  // namespace

std::vector<Rational> critical_radii(const MetricMeasureSpace& space, const Rational& k,
                                     std::size_t center) {
  require_k(k);
  auto D = breakpoints(space, k, center);
  if (D.empty()) return {Rational(1)};
  std::vector<Rational> r;
  r.reserve(D.size() + 1);
  r.emplace_back(D.front() / 2);
  for (std::size_t i = 0; i + 1 < D.size(); ++i) r.emplace_back((D[i] + D[i + 1]) / 2);
  r.emplace_back(D.back() + 1);
  return r;
}

std::vector<std::size_t> ball(const MetricMeasureSpace& space, std::size_t center,
                              const Rational& radius) {
  std::vector<std::size_t> out;
  auto row = space.row(center);
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] < radius) out.push_back(i);
  return out;
}

BallPair ball_pair(const MetricMeasureSpace& space, const Rational& k, std::size_t center,
                   const Rational& radius) {
  return {center, radius, ball(space, center, radius), ball(space, center, Rational(k * radius))};
}

std::vector<BallPair> ball_table(const MetricMeasureSpace& space, const Rational& k) {
  std::vector<BallPair> out;
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, bool> seen;
  for (std::size_t c = 0; c < space.size(); ++c)
    for (const auto& r : critical_radii(space, k, c)) {
      auto bp = ball_pair(space, k, c, r);
      if (seen.emplace(std::make_pair(bp.members, bp.k_members), true).second) out.push_back(std::move(bp));
    }
  return out;
}

namespace {

Integer lcm_of_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

Integer scale_to_integer(const Rational& q, const Integer& den) {
  return q.get_num() * (den / q.get_den());
}

// a/b > c/d for positive b, d.
bool greater(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  return a * d > c * b;
}

}  // namespace

MaximalOperator::MaximalOperator(const MetricMeasureSpace& space, const Rational& k)
    : k_(k), weight_(space.weights().begin(), space.weights().end()) {
  require_k(k);
  weight_den_ = lcm_of_denominators(weight_);
  for (const auto& w : weight_) weight_int_.push_back(scale_to_integer(w, weight_den_));

  const std::size_t n = space.size();
  centers_.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    Center& C = centers_[c];
    auto row = space.row(c);
    C.order.resize(n);
    std::iota(C.order.begin(), C.order.end(), 0);
    std::stable_sort(C.order.begin(), C.order.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    C.weight_prefix.assign(n + 1, 0);
    for (std::size_t j = 0; j < n; ++j) C.weight_prefix[j + 1] = C.weight_prefix[j] + weight_int_[C.order[j]];

    std::size_t nb = 0, nkb = 0;
    for (const auto& r : critical_radii(space, k, c)) {
      const Rational kr = k * r;
      while (nb < n && row[C.order[nb]] < r) ++nb;
      while (nkb < n && row[C.order[nkb]] < kr) ++nkb;
      if (!C.windows.empty() && C.windows.back().n_ball == nb && C.windows.back().n_kball == nkb) continue;
      C.windows.push_back({r, nb, nkb});
    }
  }
}

void MaximalOperator::check(const TestFunction& f) const {
  if (f.size() != size())
    throw std::invalid_argument("function has " + std::to_string(f.size()) + " values for a space of " +
                                std::to_string(size()) + " atoms");
  for (const auto& v : f)
    if (v < 0) throw std::invalid_argument("function values must be nonnegative");
}

std::vector<Integer> MaximalOperator::scaled_mass(const TestFunction& f, Integer& denominator) const {
  std::vector<Rational> fw(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) fw[i] = f[i] * weight_[i];
  denominator = lcm_of_denominators(fw);
  std::vector<Integer> out;
  out.reserve(fw.size());
  for (const auto& q : fw) out.push_back(scale_to_integer(q, denominator));
  return out;
}

namespace {

Rational to_value(const Integer& mass, const Integer& weight, const Integer& mass_den,
                  const Integer& weight_den) {
  Rational v(mass * weight_den, weight * mass_den);
  v.canonicalize();
  return v;
}

}  // namespace

MaximalValues MaximalOperator::centered(const TestFunction& f) const {
  check(f);
  Integer mass_den;
  auto mass = scaled_mass(f, mass_den);
  const std::size_t n = size();
  MaximalValues out{OpKind::centered, k_, std::vector<Rational>(n), std::vector<Witness>(n)};
  std::vector<Integer> prefix(n + 1);
  for (std::size_t c = 0; c < n; ++c) {
    const Center& C = centers_[c];
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + mass[C.order[j]];
    std::size_t best = 0;
    for (std::size_t w = 1; w < C.windows.size(); ++w) {
      const auto& a = C.windows[w];
      const auto& b = C.windows[best];
      if (greater(prefix[a.n_ball], C.weight_prefix[a.n_kball], prefix[b.n_ball], C.weight_prefix[b.n_kball]))
        best = w;
    }
    const auto& win = C.windows[best];
    out.values[c] = to_value(prefix[win.n_ball], C.weight_prefix[win.n_kball], mass_den, weight_den_);
    out.witnesses[c] = {c, win.radius};
  }
  return out;
}

MaximalValues MaximalOperator::noncentered(const TestFunction& f) const {
  check(f);
  Integer mass_den;
  auto mass = scaled_mass(f, mass_den);
  const std::size_t n = size();
  std::vector<Integer> best_mass(n), best_weight(n);
  std::vector<Witness> wit(n);
  std::vector<bool> set(n, false);
  std::vector<Integer> prefix(n + 1);
  std::vector<std::size_t> suffix;
  for (std::size_t c = 0; c < n; ++c) {
    const Center& C = centers_[c];
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + mass[C.order[j]];
    const auto& W = C.windows;
    // suffix[w]: best window among w.., smallest radius on ties
    suffix.assign(W.size(), 0);
    suffix.back() = W.size() - 1;
    for (std::size_t w = W.size() - 1; w-- > 0;) {
      const auto& b = W[suffix[w + 1]];
      suffix[w] = greater(prefix[b.n_ball], C.weight_prefix[b.n_kball], prefix[W[w].n_ball],
                          C.weight_prefix[W[w].n_kball])
                      ? suffix[w + 1]
                      : w;
    }
    std::size_t first = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      while (first < W.size() && W[first].n_ball <= pos) ++first;
      if (first == W.size()) break;
      const auto& win = W[suffix[first]];
      const Integer& m = prefix[win.n_ball];
      const Integer& w = C.weight_prefix[win.n_kball];
      const std::size_t x = C.order[pos];
      if (!set[x] || greater(m, w, best_mass[x], best_weight[x])) {
        best_mass[x] = m;
        best_weight[x] = w;
        wit[x] = {c, win.radius};
        set[x] = true;
      }
    }
  }
  MaximalValues out{OpKind::noncentered, k_, std::vector<Rational>(n), std::move(wit)};
  for (std::size_t x = 0; x < n; ++x) out.values[x] = to_value(best_mass[x], best_weight[x], mass_den, weight_den_);
  return out;
}

MaximalValues m_centered(const MetricMeasureSpace& space, const Rational& k, const TestFunction& f) {
  return MaximalOperator(space, k).centered(f);
}

MaximalValues m_noncentered(const MetricMeasureSpace& space, const Rational& k, const TestFunction& f) {
  return MaximalOperator(space, k).noncentered(f);
}

MaximalValues maximal(const MetricMeasureSpace& space, OpKind op, const Rational& k, const TestFunction& f) {
  return MaximalOperator(space, k).apply(op, f);
}

namespace {

std::vector<Rational> sampled_radii(const MetricMeasureSpace& space, const Rational& k,
                                    std::size_t center, int samples) {
  if (samples < 1) throw std::invalid_argument("samples_per_gap must be >= 1");
  std::vector<Rational> D{0};
  for (const auto& d : space.row(center))
    if (d > 0) {
      D.push_back(d);
      D.push_back(d / k);
    }
  std::sort(D.begin(), D.end());
  D.erase(std::unique(D.begin(), D.end()), D.end());
  D.push_back(D.size() == 1 ? Rational(2) : Rational(D.back() + 2));
  std::vector<Rational> out;
  for (std::size_t g = 0; g + 1 < D.size(); ++g) {
    const Rational len = D[g + 1] - D[g];
    out.push_back(D[g] + len / 2);
    for (int j = 1; j <= samples; ++j) out.push_back(D[g] + len * Rational(j, samples + 1));
  }
  return out;
}

Rational brute_ratio(const MetricMeasureSpace& space, const Rational& k, const TestFunction& f,
                     std::size_t center, const Rational& r) {
  Rational num = 0, den = 0;
  const Rational kr = k * r;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Rational& d = space.dist(center, i);
    if (d < r) num += f[i] * space.weight(i);
    if (d < kr) den += space.weight(i);
  }
  return num / den;
}

MaximalValues oracle(const MetricMeasureSpace& space, OpKind op, const Rational& k,
                     const TestFunction& f, int samples) {
  require_k(k);
  if (f.size() != space.size()) throw std::invalid_argument("function size does not match the space");
  const std::size_t n = space.size();
  MaximalValues out{op, k, std::vector<Rational>(n), std::vector<Witness>(n)};
  std::vector<bool> set(n, false);
  for (std::size_t z = 0; z < n; ++z)
    for (const auto& r : sampled_radii(space, k, z, samples)) {
      const Rational v = brute_ratio(space, k, f, z, r);
      for (std::size_t x = 0; x < n; ++x) {
        if (op == OpKind::centered ? x != z : !(space.dist(z, x) < r)) continue;
        if (!set[x] || v > out.values[x]) {
          out.values[x] = v;
          out.witnesses[x] = {z, r};
          set[x] = true;
        }
      }
    }
  return out;
}

}  // namespace

MaximalValues m_centered_oracle(const MetricMeasureSpace& space, const Rational& k,
                                const TestFunction& f, int samples_per_gap) {
  return oracle(space, OpKind::centered, k, f, samples_per_gap);
}

MaximalValues m_noncentered_oracle(const MetricMeasureSpace& space, const Rational& k,
                                   const TestFunction& f, int samples_per_gap) {
  return oracle(space, OpKind::noncentered, k, f, samples_per_gap);
}

TestFunction delta(const MetricMeasureSpace& space, std::size_t atom) {
  TestFunction f(space.size(), Rational(0));
  f.at(atom) = 1;
  return f;
}

TestFunction constant_function(const MetricMeasureSpace& space, const Rational& c) {
  return TestFunction(space.size(), c);
}

}  // namespace maxlab
