#include "maxlab/lumped.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace maxlab {

LumpedSpace::LumpedSpace(std::vector<LumpedClass> classes, std::vector<std::vector<Shell>> shells,
                         std::string provenance)
    : classes_(std::move(classes)), shells_(std::move(shells)), provenance_(std::move(provenance)) {
  if (classes_.empty()) throw std::invalid_argument("lumped space needs a class");
  if (shells_.size() != classes_.size()) throw std::invalid_argument("one shell list per class");
  for (auto& list : shells_) {
    for (const auto& s : list)
      if (s.cls >= classes_.size() || s.dist <= 0 || s.mult < 0)
        throw std::invalid_argument("malformed shell");
    std::stable_sort(list.begin(), list.end(), [](const Shell& a, const Shell& b) { return a.dist < b.dist; });
  }
}

Integer LumpedSpace::atoms() const {
  Integer n = 0;
  for (const auto& c : classes_) n += c.count;
  return n;
}

Rational LumpedSpace::total_measure() const {
  Rational s = 0;
  for (std::size_t c = 0; c < classes_.size(); ++c) s += class_measure(c);
  return s;
}

bool lumped_consistent(const LumpedSpace& space) {
  for (std::size_t c = 0; c < space.classes(); ++c) {
    std::vector<Integer> seen(space.classes(), 0);
    seen[c] = 1;
    for (const auto& s : space.shells(c)) seen[s.cls] += s.mult;
    for (std::size_t t = 0; t < space.classes(); ++t)
      if (seen[t] != space.cls(t).count) return false;
  }
  return true;
}

namespace {

std::string basic_provenance(const char* kind, const BasicParams& p) {
  nlohmann::json j = {{"kind", kind},
                      {"params", {{"tau", p.tau.get_str()}, {"d", to_string(p.d)}, {"m", to_string(p.m)}}}};
  return j.dump();
}

}  // namespace

LumpedSpace lumped_basic_s(const BasicParams& p) {
  check_basic_params(BasicKind::S, p);
  std::vector<LumpedClass> classes{{"x_0", 1, 1}, {"x_i", p.tau, p.m}};
  std::vector<std::vector<Shell>> shells(2);
  shells[0] = {{1, 1, p.tau}};
  shells[1] = {{1, 0, 1}};
  if (p.tau > 1) shells[1].push_back({p.d, 1, p.tau - 1});
  return {std::move(classes), std::move(shells), basic_provenance("basic_s", p)};
}

LumpedSpace lumped_basic_t(const BasicParams& p) {
  check_basic_params(BasicKind::T, p);
  const Rational mid = (p.d + 1) / 2;
  enum { y0, yo, yp };
  std::vector<LumpedClass> classes{{"y_0", 1, 1}, {"yo_i", p.tau, Rational(1) / Rational(p.tau)}, {"y'_i", p.tau, p.m}};
  std::vector<std::vector<Shell>> shells(3);
  shells[y0] = {{1, yo, p.tau}, {mid, yp, p.tau}};
  shells[yo] = {{1, y0, 1}, {1, yp, 1}};
  shells[yp] = {{1, yo, 1}, {mid, y0, 1}};
  if (p.tau > 1) {
    shells[yo].push_back({mid, yo, p.tau - 1});
    shells[yo].push_back({p.d, yp, p.tau - 1});
    shells[yp].push_back({mid, yp, p.tau - 1});
    shells[yp].push_back({p.d, yo, p.tau - 1});
  }
  return {std::move(classes), std::move(shells), basic_provenance("basic_t", p)};
}

LumpedSpace lumped_basic(BasicKind kind, const BasicParams& params) {
  return kind == BasicKind::S ? lumped_basic_s(params) : lumped_basic_t(params);
}

std::vector<Rational> lumped_maximal(const LumpedSpace& space, OpKind op, const Rational& k,
                                     const std::vector<Rational>& f) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::size_t nc = space.classes();
  if (f.size() != nc) throw std::invalid_argument("lumped function needs one value per class");
  for (const auto& v : f)
    if (v < 0) throw std::invalid_argument("function values must be nonnegative");

  std::vector<Rational> best(nc, Rational(0));
  std::vector<bool> set(nc, false);
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& sh = space.shells(c);
    std::vector<Rational> D;
    for (const auto& s : sh) {
      D.push_back(s.dist);
      D.push_back(s.dist / k);
    }
    std::sort(D.begin(), D.end());
    D.erase(std::unique(D.begin(), D.end()), D.end());
    std::vector<Rational> radii;
    if (D.empty()) {
      radii.emplace_back(1);
    } else {
      radii.emplace_back(D.front() / 2);
      for (std::size_t i = 0; i + 1 < D.size(); ++i) radii.emplace_back((D[i] + D[i + 1]) / 2);
      radii.emplace_back(D.back() + 1);
    }
    const Rational self_mass = f[c] * space.cls(c).weight;
    const Rational self_weight = space.cls(c).weight;
    for (const auto& r : radii) {
      const Rational kr = k * r;
      Rational mass = self_mass, weight = self_weight;
      std::vector<bool> inside(nc, false);
      inside[c] = true;
      for (const auto& s : sh) {
        const Rational w = space.cls(s.cls).weight * s.mult;
        if (s.dist < r) {
          mass += f[s.cls] * w;
          inside[s.cls] = inside[s.cls] || s.mult > 0;
        }
        if (s.dist < kr) weight += w;
      }
      const Rational v = mass / weight;
      for (std::size_t t = 0; t < nc; ++t) {
        if (op == OpKind::centered ? t != c : !inside[t]) continue;
        if (!set[t] || v > best[t]) {
          best[t] = v;
          set[t] = true;
        }
      }
    }
  }
  return best;
}

}  // namespace maxlab
