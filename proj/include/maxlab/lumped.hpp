#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "maxlab/constructions.hpp"
#include "maxlab/maximal.hpp"
#include "maxlab/rational.hpp"

namespace maxlab {

/// A space described up to symmetry: atoms fall into classes whose members
/// are interchanged by isometries preserving every class and the measure.
/// Only functions constant on classes are evaluated, so a class of 10^17
/// atoms costs as much as one atom.
struct LumpedClass {
  std::string label;
  Integer count;
  Rational weight;  // of each member
};

/// From a fixed member of one class: `mult` members of class `cls` at `dist`.
struct Shell {
  Rational dist;
  std::size_t cls;
  Integer mult;
};

class LumpedSpace {
 public:
  LumpedSpace(std::vector<LumpedClass> classes, std::vector<std::vector<Shell>> shells,
              std::string provenance);

  std::size_t classes() const { return classes_.size(); }
  const LumpedClass& cls(std::size_t c) const { return classes_[c]; }
  /// Shells seen from a member of class c, excluding that member itself.
  const std::vector<Shell>& shells(std::size_t c) const { return shells_[c]; }
  Rational class_measure(std::size_t c) const { return classes_[c].weight * classes_[c].count; }
  Integer atoms() const;
  Rational total_measure() const;
  const std::string& provenance() const { return provenance_; }

 private:
  std::vector<LumpedClass> classes_;
  std::vector<std::vector<Shell>> shells_;
  std::string provenance_;
};

/// Classes x_0 and {x_i}.
LumpedSpace lumped_basic_s(const BasicParams& params);
/// Classes y_0, {yo_i} and {y'_i}.
LumpedSpace lumped_basic_t(const BasicParams& params);
LumpedSpace lumped_basic(BasicKind kind, const BasicParams& params);

/// Maximal values per class of a class-constant function.
std::vector<Rational> lumped_maximal(const LumpedSpace& space, OpKind op, const Rational& k,
                                     const std::vector<Rational>& f);

/// Shell multiplicities must account for every other atom exactly once.
bool lumped_consistent(const LumpedSpace& space);

}  // namespace maxlab
