#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxlab/rational.hpp"

namespace maxlab {

/// Structured point name, e.g. role "x" with index {2, 1} prints as "x_{2,1}".
/// Glued spaces prefix the role with the component, "c3/x".
struct PointLabel {
  std::string role;
  std::vector<long> index;

  std::string str() const;
  static PointLabel parse(std::string_view text);

  friend bool operator==(const PointLabel&, const PointLabel&) = default;
};

/// Finite atomic metric measure space with exact data.
///
/// The distance matrix is dense and row-major. Instances are immutable after
/// construction; the constructor only checks shapes, metric axioms are
/// checked by validate_metric.
class MetricMeasureSpace {
 public:
  MetricMeasureSpace(std::vector<PointLabel> labels, std::vector<Rational> dist,
                     std::vector<Rational> weight, std::string provenance);

  std::size_t size() const { return weight_.size(); }
  const Rational& dist(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  std::span<const Rational> row(std::size_t i) const {
    return {dist_.data() + i * size(), size()};
  }
  const Rational& weight(std::size_t i) const { return weight_[i]; }
  std::span<const Rational> weights() const { return weight_; }
  const PointLabel& label(std::size_t i) const { return labels_[i]; }
  std::span<const PointLabel> labels() const { return labels_; }
  const std::string& provenance() const { return provenance_; }

  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const MetricMeasureSpace&, const MetricMeasureSpace&) = default;

 private:
  std::vector<PointLabel> labels_;
  std::vector<Rational> dist_;
  std::vector<Rational> weight_;
  std::string provenance_;
};

struct Violation {
  std::string kind;  // "diagonal", "symmetry", "positivity", "triangle", "weight", "label"
  std::vector<std::size_t> witness;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

ValidationReport validate_metric(const MetricMeasureSpace& space);

Rational total_measure(const MetricMeasureSpace& space);
Rational diameter(const MetricMeasureSpace& space);

MetricMeasureSpace scale_metric(const MetricMeasureSpace& space, const Rational& c);
MetricMeasureSpace scale_measure(const MetricMeasureSpace& space, const Rational& c);

/// One atom of weight w.
MetricMeasureSpace one_point_space(const Rational& w = Rational(1));

}  // namespace maxlab
