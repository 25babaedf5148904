#pragma once

#include <cstddef>
#include <vector>

#include "maxlab/rational.hpp"
#include "maxlab/space.hpp"

namespace maxlab {

enum class OpKind { centered, noncentered };

const char* to_string(OpKind op);
/// Accepts "c"/"centered" and "nc"/"noncentered".
OpKind parse_op_kind(std::string_view text);

/// Nonnegative value per atom.
using TestFunction = std::vector<Rational>;

/// (B, kB) realized by an explicit center and radius. Member lists are sorted.
struct BallPair {
  std::size_t center = 0;
  Rational radius;
  std::vector<std::size_t> members;
  std::vector<std::size_t> k_members;
};

struct Witness {
  std::size_t center = 0;
  Rational radius;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct MaximalValues {
  OpKind op = OpKind::centered;
  Rational k;
  std::vector<Rational> values;
  std::vector<Witness> witnesses;
};

/// One radius strictly inside every gap between consecutive breakpoints
/// {dist(center, j)} u {dist(center, j)/k}, plus one below the first and one
/// past the last. Every distinct (B, kB) for this center occurs at some radius.
std::vector<Rational> critical_radii(const MetricMeasureSpace& space, const Rational& k,
                                     std::size_t center);

/// Open ball {i : dist(center, i) < radius}, ascending.
std::vector<std::size_t> ball(const MetricMeasureSpace& space, std::size_t center,
                              const Rational& radius);
BallPair ball_pair(const MetricMeasureSpace& space, const Rational& k, std::size_t center,
                   const Rational& radius);

/// Distinct (members, k_members) pairs over all centers and critical radii,
/// in order of first appearance (center ascending, radius ascending).
std::vector<BallPair> ball_table(const MetricMeasureSpace& space, const Rational& k);

/// Precomputed ball structure for one (space, k); evaluates many functions.
///
/// Per center the atoms are ordered by distance and each critical radius
/// becomes a window (|B| prefix, |kB| prefix) into that order. Sums are done
/// over integers after clearing denominators.
class MaximalOperator {
 public:
  MaximalOperator(const MetricMeasureSpace& space, const Rational& k);

  MaximalValues centered(const TestFunction& f) const;
  MaximalValues noncentered(const TestFunction& f) const;
  MaximalValues apply(OpKind op, const TestFunction& f) const {
    return op == OpKind::centered ? centered(f) : noncentered(f);
  }

  std::size_t size() const { return weight_.size(); }
  const Rational& k() const { return k_; }

 private:
  struct Window {
    Rational radius;
    std::size_t n_ball;
    std::size_t n_kball;
  };
  struct Center {
    std::vector<std::size_t> order;  // atoms by distance from the center
    std::vector<Integer> weight_prefix;  // weight_prefix[j] = sum of the first j
    std::vector<Window> windows;         // radius ascending, distinct (n_ball, n_kball)
  };

  std::vector<Integer> scaled_mass(const TestFunction& f, Integer& denominator) const;
  void check(const TestFunction& f) const;

  Rational k_;
  std::vector<Rational> weight_;
  Integer weight_den_;
  std::vector<Integer> weight_int_;
  std::vector<Center> centers_;
};

MaximalValues m_centered(const MetricMeasureSpace& space, const Rational& k, const TestFunction& f);
MaximalValues m_noncentered(const MetricMeasureSpace& space, const Rational& k,
                            const TestFunction& f);
MaximalValues maximal(const MetricMeasureSpace& space, OpKind op, const Rational& k,
                      const TestFunction& f);

/// Brute force over radii sampled at fractions 1/2 and j/(samples+1) of every
/// gap between distance breakpoints; membership rescanned at each radius.
MaximalValues m_centered_oracle(const MetricMeasureSpace& space, const Rational& k,
                                const TestFunction& f, int samples_per_gap);
MaximalValues m_noncentered_oracle(const MetricMeasureSpace& space, const Rational& k,
                                   const TestFunction& f, int samples_per_gap);

TestFunction delta(const MetricMeasureSpace& space, std::size_t atom);
TestFunction constant_function(const MetricMeasureSpace& space, const Rational& c);

}  // namespace maxlab
