#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <variant>

#include "errors.hpp"

namespace logiso {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact-when-possible number. A Scalar stays rational as long as every
// operand was rational and degrades to binary double as soon as one operand
// is; measures, masses and certificate bounds all run through this type so
// that rational inputs give exact passports and exact reciprocity.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(int n) : v_(Rational(n)) {}
  Scalar(long long n) : v_(Rational(n)) {}
  Scalar(std::uint64_t n) : v_(Rational(BigInt(n))) {}
  explicit Scalar(Rational r) : v_(std::move(r)) {}

  // A plain double stays in float mode.
  static Scalar from_double(double d) { return Scalar(Tag{}, d); }
  // Exact binary expansion of a double (used by --rational / force-exact parsing).
  static Scalar exact_from_double(double d);
  static Scalar rational(long long num, long long den);

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& rat() const { return std::get<Rational>(v_); }
  double as_double() const;

  bool is_zero() const;
  bool is_negative() const;
  bool is_positive() const { return !is_zero() && !is_negative(); }
  bool is_integer() const;
  // Integer value when is_integer() and it fits; throws otherwise.
  std::int64_t as_int64() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  // Exact comparison when both sides are rational, double comparison otherwise.
  friend bool operator==(const Scalar& a, const Scalar& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return cmp(a, b) >= 0; }

  // base^n with n >= 0; exact for rational base.
  static Scalar pow_uint(const Scalar& base, std::uint64_t n);

  std::string str() const;

 private:
  struct Tag {};
  Scalar(Tag, double d) : v_(d) {}
  static int cmp(const Scalar& a, const Scalar& b);

  std::variant<Rational, double> v_;
};

inline Scalar min(const Scalar& a, const Scalar& b) { return a < b ? a : b; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
Scalar abs(const Scalar& a);

// Equality of measures: exact in rational mode, 1e-12 relative in float mode.
bool approx_equal(const Scalar& a, const Scalar& b, double rel = 1e-12);

// An unevaluated quotient num/den (both positive). Radon-Nikodym cell ratios
// are kept in this form so that a ratio times its cellwise reciprocal
// compares equal to one without any rounding, in both numeric modes.
struct Frac {
  Scalar num;
  Scalar den;

  Scalar value() const { return num / den; }
  Frac reciprocal() const { return Frac{den, num}; }
  Frac times(const Frac& o) const { return Frac{num * o.num, den * o.den}; }
  bool is_one_exact() const { return num == den; }
};

}  // namespace logiso
