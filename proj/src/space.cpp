#include "maxlab/space.hpp"

#include "maxlab/json_util.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace maxlab {

std::string PointLabel::str() const {
  if (index.empty()) return role;
  std::string s = role + "_";
  if (index.size() == 1) return s + std::to_string(index[0]);
  s += "{";
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(index[i]);
  }
  return s + "}";
}

PointLabel PointLabel::parse(std::string_view text) {
  PointLabel label;
  auto us = text.rfind('_');
  if (us == std::string_view::npos || us + 1 == text.size()) {
    label.role = std::string(text);
    return label;
  }
  std::string_view tail = text.substr(us + 1);
  if (tail.front() == '{' && tail.back() == '}') tail = tail.substr(1, tail.size() - 2);
  std::vector<long> idx;
  std::size_t pos = 0;
  while (pos <= tail.size()) {
    auto comma = tail.find(',', pos);
    auto part = tail.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
        })) {
      label.role = std::string(text);
      return label;
    }
    idx.push_back(std::stol(std::string(part)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  label.role = std::string(text.substr(0, us));
  label.index = std::move(idx);
  return label;
}

MetricMeasureSpace::MetricMeasureSpace(std::vector<PointLabel> labels, std::vector<Rational> dist,
                                       std::vector<Rational> weight, std::string provenance)
    : labels_(std::move(labels)),
      dist_(std::move(dist)),
      weight_(std::move(weight)),
      provenance_(std::move(provenance)) {
  const std::size_t n = weight_.size();
  if (n == 0) throw std::invalid_argument("space must have at least one point");
  if (dist_.size() != n * n)
    throw std::invalid_argument("distance matrix is not " + std::to_string(n) + "x" +
                                std::to_string(n));
  if (labels_.empty()) {
    labels_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels_.push_back({"p", {static_cast<long>(i)}});
  }
  if (labels_.size() != n) throw std::invalid_argument("label count does not match point count");
  for (auto& q : dist_) q.canonicalize();
  for (auto& q : weight_) q.canonicalize();
}

std::optional<std::size_t> MetricMeasureSpace::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i].str() == label) return i;
  return std::nullopt;
}

std::size_t MetricMeasureSpace::index_of(std::string_view label) const {
  auto i = find(label);
  if (!i) throw std::out_of_range("no point labelled " + std::string(label));
  return *i;
}

namespace {

// Distances over a common denominator so the O(N^3) triangle scan only adds integers.
std::vector<Integer> integer_distances(const MetricMeasureSpace& space) {
  Integer lcm = 1;
  for (std::size_t i = 0; i < space.size(); ++i)
    for (const auto& q : space.row(i)) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(space.size() * space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    for (const auto& q : space.row(i)) out.emplace_back(q.get_num() * (lcm / q.get_den()));
  return out;
}

}  // namespace

ValidationReport validate_metric(const MetricMeasureSpace& space) {
  ValidationReport report;
  const std::size_t n = space.size();
  auto add = [&](std::string kind, std::vector<std::size_t> w) {
    report.violations.push_back({std::move(kind), std::move(w)});
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (space.dist(i, i) != 0) add("diagonal", {i});
    if (space.weight(i) <= 0) add("weight", {i});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (space.dist(i, j) != space.dist(j, i)) add("symmetry", {i, j});
      if (space.dist(i, j) <= 0 || space.dist(j, i) <= 0) add("positivity", {i, j});
    }
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i)
    if (!seen.insert(space.label(i).str()).second) add("label", {i});

  const auto d = integer_distances(space);
  Integer sum;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Integer& dij = d[i * n + j];
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        sum = d[i * n + l] + d[l * n + j];
        if (dij > sum) add("triangle", {i, j, l});
      }
    }
  report.ok = report.violations.empty();
  return report;
}

Rational total_measure(const MetricMeasureSpace& space) {
  Rational s = 0;
  for (const auto& w : space.weights()) s += w;
  return s;
}

Rational diameter(const MetricMeasureSpace& space) {
  Rational best = 0;
  for (std::size_t i = 0; i < space.size(); ++i)
    for (const auto& q : space.row(i))
      if (q > best) best = q;
  return best;
}

namespace {

std::string scaled_provenance(const char* kind, const MetricMeasureSpace& space, const Rational& c) {
  nlohmann::json j = {{"kind", kind},
                      {"params", {{"c", to_string(c)}, {"base", parse_provenance(space.provenance())}}}};
  return j.dump();
}

}  // namespace

MetricMeasureSpace scale_metric(const MetricMeasureSpace& space, const Rational& c) {
  if (c <= 0) throw std::invalid_argument("metric scale must be positive");
  if (c == 1) return space;
  std::vector<Rational> dist;
  dist.reserve(space.size() * space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    for (const auto& q : space.row(i)) dist.emplace_back(q * c);
  return {{space.labels().begin(), space.labels().end()}, std::move(dist),
          {space.weights().begin(), space.weights().end()},
          scaled_provenance("scale_metric", space, c)};
}

MetricMeasureSpace scale_measure(const MetricMeasureSpace& space, const Rational& c) {
  if (c <= 0) throw std::invalid_argument("measure scale must be positive");
  if (c == 1) return space;
  std::vector<Rational> w;
  w.reserve(space.size());
  for (const auto& q : space.weights()) w.emplace_back(q * c);
  std::vector<Rational> dist;
  dist.reserve(space.size() * space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    for (const auto& q : space.row(i)) dist.push_back(q);
  return {{space.labels().begin(), space.labels().end()}, std::move(dist), std::move(w),
          scaled_provenance("scale_measure", space, c)};
}

MetricMeasureSpace one_point_space(const Rational& w) {
  return {{PointLabel{"a", {}}}, {Rational(0)}, {w},
          R"({"kind":"one_point","params":{"weight":")" + to_string(w) + "\"}}"};
}

}  // namespace maxlab
