#include "maxlab/rational.hpp"

#include <cmath>
#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace maxlab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: " + std::string(text));
  if (num[0] == '+') num = num.substr(1);
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Integer pow_int(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational pow_int(const Rational& base, long e) {
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational r(pow_int(Integer(base.get_num()), a), pow_int(Integer(base.get_den()), a));
  r.canonicalize();
  if (e < 0) {
    if (r == 0) throw std::domain_error("zero to a negative power");
    r = 1 / r;
  }
  return r;
}

Integer floor_root(const Integer& x, unsigned long n) {
  if (x < 0) throw std::domain_error("root of a negative integer");
  if (n == 0) throw std::domain_error("zeroth root");
  Integer r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), n);
  return r;
}

namespace {

// base^(a/b) = (base^a)^(1/b); returns floor and whether the root was exact.
std::pair<Integer, bool> root_pow(const Integer& base, const Rational& e) {
  if (base < 1) throw std::domain_error("power base must be >= 1");
  if (e < 0) throw std::domain_error("negative exponent");
  if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p())
    throw std::overflow_error("exponent too large");
  Integer p = pow_int(base, e.get_num().get_ui());
  Integer r;
  int exact = mpz_root(r.get_mpz_t(), p.get_mpz_t(), e.get_den().get_ui());
  return {r, exact != 0};
}

}  // namespace

Integer floor_pow(const Integer& base, const Rational& e) { return root_pow(base, e).first; }

Integer ceil_pow(const Integer& base, const Rational& e) {
  auto [r, exact] = root_pow(base, e);
  return exact ? r : Integer(r + 1);
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational dyadic_round(double x, int bits) {
  double scaled = std::nearbyint(std::ldexp(x, bits));
  Integer num;
  mpz_set_d(num.get_mpz_t(), scaled);
  Integer den = pow_int(Integer(2), static_cast<unsigned long>(bits));
  Rational q(num, den);
  q.canonicalize();
  return q;
}

LpExponent::LpExponent(Rational p) : value_(std::move(p)) {
  value_.canonicalize();
  if (value_ < 1) throw std::invalid_argument("p must be >= 1, got " + to_string(value_));
}

LpExponent LpExponent::infinity() {
  LpExponent e;
  e.infinite_ = true;
  return e;
}

LpExponent LpExponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  return LpExponent(parse_rational(text));
}

double LpExponent::as_double() const {
  return infinite_ ? HUGE_VAL : to_double(value_);
}

bool LpExponent::is_integer() const { return !infinite_ && value_.get_den() == 1; }

std::string LpExponent::str() const { return infinite_ ? "inf" : to_string(value_); }

bool approx_le(double a, double b, double tol) {
  return a <= b + tol * std::max(1.0, std::fabs(b));
}

}  // namespace maxlab
