#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxlab/rational.hpp"
#include "maxlab/space.hpp"

namespace maxlab {

/// Row n-1 holds F(n, 1..tau_n).
using BranchTable = std::vector<std::vector<Rational>>;

/// Table with every entry equal to `value`, shaped by `tau`.
BranchTable constant_table(const std::vector<long>& tau, const Rational& value);

struct FirstGenParams {
  std::vector<long> tau;  // tau_1..tau_{n_max}
  BranchTable F;
};

struct SecondGenParams {
  std::vector<long> tau_star;
  BranchTable F_star;
};

struct SegmentParams {
  BranchTable d;  // row n-1: d_{n,1..n}
  BranchTable F;  // row n-1: F(n,0..n)
};

/// tau may exceed what fits in memory for family members; see LumpedSpace.
struct BasicParams {
  Integer tau;
  Rational d;
  Rational m;

  friend bool operator==(const BasicParams&, const BasicParams&) = default;
};

enum class BasicKind { S, T };

struct GlueParams {
  Rational k0;
  std::vector<MetricMeasureSpace> components;
};

/// Parameters shared by the varying-k families. Components are indexed by
/// n in [n_min, n_max].
struct FamilyParams {
  Rational k;
  Rational p;
  Rational epsilon;
  Rational delta;
  long N = 1;
  long n_min = 2;  // must exceed N
  long n_max = 40;
};

enum class Lemma7Mode { strict, weak };

/// One member of a family: which basic space and with what parameters.
struct FamilyMember {
  long n;
  BasicKind kind;
  BasicParams params;
};

struct Family {
  std::vector<FamilyMember> members;
  Rational k0;  // gluing constant the family is meant to be combined with
  nlohmann::json descriptor;
};

MetricMeasureSpace first_generation(const FirstGenParams& params);
MetricMeasureSpace second_generation(const SecondGenParams& params);
MetricMeasureSpace lemma1_modify(const MetricMeasureSpace& space);
MetricMeasureSpace segment_type(const SegmentParams& params);
SegmentParams segment_lemma2_params(const Rational& k, long n_max);
SegmentParams segment_lemma3_params(const Rational& k, long n_max);
MetricMeasureSpace segment_preset_lemma2(const Rational& k, long n_max);
MetricMeasureSpace segment_preset_lemma3(const Rational& k, long n_max);
MetricMeasureSpace basic_s(const BasicParams& params);
MetricMeasureSpace basic_t(const BasicParams& params);
MetricMeasureSpace basic(BasicKind kind, const BasicParams& params);

/// Disjoint union at mutual distance k0 + 1. Component n (1-based, list
/// order) is rescaled to diameter <= 1 and measure <= 2^-n.
MetricMeasureSpace glue(const GlueParams& params);

/// The rescaled copies of the components exactly as they sit inside glue().
std::vector<MetricMeasureSpace> glue_rescaled_components(const GlueParams& params);

/// Index range of component n (1-based) inside glue(params).
std::pair<std::size_t, std::size_t> glue_component_range(const GlueParams& params, std::size_t n);

void check_basic_params(BasicKind kind, const BasicParams& params);

Family family_lemma6(const FamilyParams& params);
Family family_lemma6p(const FamilyParams& params);
Family family_lemma7(const Rational& k, Lemma7Mode mode, long n_max);
Family family_lemma7p(const Rational& k, Lemma7Mode mode, long n_max);

/// Largest number of atoms build_space() will materialize densely.
inline constexpr std::size_t kMaxDenseAtoms = 20000;

/// Builds a space from {"kind": ..., "params": {...}}. Families are glued with
/// their k0. Throws std::invalid_argument on unknown kinds or bad params.
MetricMeasureSpace build_space(const nlohmann::json& descriptor);

/// The descriptor recorded in a space's provenance (without derived data).
nlohmann::json descriptor_of(const MetricMeasureSpace& space);

}  // namespace maxlab
