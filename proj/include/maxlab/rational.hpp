#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace maxlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or "p" into a canonical rational. Throws std::invalid_argument
/// on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form (always with a denominator, "3/1" for integers).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

double to_double(const Rational& q);

Integer pow_int(const Integer& base, unsigned long e);
Rational pow_int(const Rational& base, long e);

/// floor(x^(1/n)) for x >= 0.
Integer floor_root(const Integer& x, unsigned long n);

/// floor(base^e) and ceil(base^e) for an integer base >= 1 and rational e >= 0,
/// computed with integer roots only.
Integer floor_pow(const Integer& base, const Rational& e);
Integer ceil_pow(const Integer& base, const Rational& e);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// round(x * 2^bits) / 2^bits.
Rational dyadic_round(double x, int bits);

/// An L^p exponent: p in [1, inf) as a rational, or infinity.
class LpExponent {
 public:
  LpExponent() : value_(1) {}
  explicit LpExponent(Rational p);
  static LpExponent infinity();
  /// Accepts "inf", "p/q" or "p".
  static LpExponent parse(std::string_view text);

  bool is_infinite() const { return infinite_; }
  /// Undefined when is_infinite().
  const Rational& value() const { return value_; }
  double as_double() const;
  /// True when p is a finite integer.
  bool is_integer() const;
  std::string str() const;

  friend bool operator==(const LpExponent& a, const LpExponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  bool infinite_ = false;
  Rational value_;
};

/// a <= b up to 1e-9 relative to max(1, |b|).
bool approx_le(double a, double b, double tol = 1e-9);

}  // namespace maxlab
