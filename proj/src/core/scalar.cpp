#include "scalar.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace logiso {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::unknown_atom: return "UnknownAtom";
    case Errc::unknown_component: return "UnknownComponent";
    case Errc::algebra_mismatch: return "AlgebraMismatch";
    case Errc::undecidable_tail: return "UndecidableTail";
    case Errc::infinite_mass: return "InfiniteMass";
    case Errc::derivative_bounded: return "DerivativeBounded";
    case Errc::row_mismatch: return "RowMismatch";
    case Errc::ratio_unbounded: return "RatioUnbounded";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::schema: return "SchemaError";
    case Errc::domain: return "DomainError";
  }
  return "Error";
}

Scalar Scalar::exact_from_double(double d) {
  if (!std::isfinite(d)) throw Error(Errc::domain, "non-finite number");
  return Scalar(Rational(d));
}

Scalar Scalar::rational(long long num, long long den) {
  if (den == 0) throw Error(Errc::domain, "zero denominator");
  return Scalar(Rational(BigInt(num), BigInt(den)));
}

double Scalar::as_double() const {
  if (is_rational()) return rat().convert_to<double>();
  return std::get<double>(v_);
}

bool Scalar::is_zero() const {
  if (is_rational()) return rat() == 0;
  return std::get<double>(v_) == 0.0;
}

bool Scalar::is_negative() const {
  if (is_rational()) return rat() < 0;
  return std::get<double>(v_) < 0.0;
}

bool Scalar::is_integer() const {
  if (is_rational()) return denominator(rat()) == 1;
  double d = std::get<double>(v_);
  return std::isfinite(d) && d == std::floor(d);
}

std::int64_t Scalar::as_int64() const {
  if (!is_integer()) throw Error(Errc::domain, "not an integer");
  if (is_rational()) return numerator(rat()).convert_to<std::int64_t>();
  return static_cast<std::int64_t>(std::get<double>(v_));
}

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(Rational(-rat()));
  return from_double(-std::get<double>(v_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    v_ = Rational(rat() + o.rat());
  } else {
    v_ = as_double() + o.as_double();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    v_ = Rational(rat() - o.rat());
  } else {
    v_ = as_double() - o.as_double();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_rational() && o.is_rational()) {
    v_ = Rational(rat() * o.rat());
  } else {
    v_ = as_double() * o.as_double();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(Errc::domain, "division by zero");
  if (is_rational() && o.is_rational()) {
    v_ = Rational(rat() / o.rat());
  } else {
    v_ = as_double() / o.as_double();
  }
  return *this;
}

int Scalar::cmp(const Scalar& a, const Scalar& b) {
  if (a.is_rational() && b.is_rational()) {
    if (a.rat() < b.rat()) return -1;
    if (a.rat() > b.rat()) return 1;
    return 0;
  }
  double x = a.as_double(), y = b.as_double();
  if (x < y) return -1;
  if (x > y) return 1;
  return 0;
}

Scalar Scalar::pow_uint(const Scalar& base, std::uint64_t n) {
  if (base.is_rational()) {
    BigInt num = pow(numerator(base.rat()), static_cast<unsigned>(n));
    BigInt den = pow(denominator(base.rat()), static_cast<unsigned>(n));
    return Scalar(Rational(num, den));
  }
  return from_double(std::pow(base.as_double(), static_cast<double>(n)));
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (is_rational()) {
    os << rat();
  } else {
    os.precision(17);
    os << std::get<double>(v_);
  }
  return os.str();
}

Scalar abs(const Scalar& a) { return a.is_negative() ? -a : a; }

bool approx_equal(const Scalar& a, const Scalar& b, double rel) {
  if (a.is_rational() && b.is_rational()) return a.rat() == b.rat();
  double x = a.as_double(), y = b.as_double();
  if (x == y) return true;
  double scale = std::max(std::fabs(x), std::fabs(y));
  return std::fabs(x - y) <= rel * scale;
}

}  // namespace logiso
