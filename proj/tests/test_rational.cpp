#include "doctest.h"
#include "maxlab/rational.hpp"

using namespace maxlab;

TEST_CASE("parse and print rationals") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(Rational(3)) == "3/1");
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("integer powers and roots") {
  CHECK(pow_int(Integer(3), 4) == 81);
  CHECK(pow_int(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(floor_root(Integer(80), 4) == 2);
  CHECK(floor_root(Integer(81), 4) == 3);
  // 2^(3/2) = 2.828...
  CHECK(floor_pow(Integer(2), Rational(3, 2)) == 2);
  CHECK(ceil_pow(Integer(2), Rational(3, 2)) == 3);
  CHECK(ceil_pow(Integer(4), Rational(3, 2)) == 8);
  CHECK(floor_pow(Integer(7), Rational(0)) == 1);
  CHECK(floor(Rational(-3, 2)) == -2);
  CHECK(ceil(Rational(-3, 2)) == -1);
}

TEST_CASE("dyadic rounding") {
  CHECK(dyadic_round(0.75, 2) == Rational(3, 4));
  CHECK(dyadic_round(0.3, 1) == Rational(1, 2));
  Rational q = dyadic_round(1.0 / 3.0, 20);
  CHECK(q.get_den() == 1 << 20);
}

TEST_CASE("lp exponents") {
  CHECK(LpExponent::parse("inf").is_infinite());
  CHECK(LpExponent::parse("3/2").value() == Rational(3, 2));
  CHECK(LpExponent::parse("2").is_integer());
  CHECK_FALSE(LpExponent::parse("3/2").is_integer());
  CHECK(LpExponent::parse("inf").str() == "inf");
  CHECK_THROWS(LpExponent(Rational(1, 2)));
}

TEST_CASE("approximate comparison") {
  CHECK(approx_le(2.0 + 1e-10, 2.0));
  CHECK_FALSE(approx_le(2.0 + 1e-6, 2.0));
  CHECK(approx_le(1e9 + 0.5, 1e9));
}
