#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scalar.hpp"

using namespace logiso;

TEST_CASE("rational arithmetic stays exact") {
  Scalar third = Scalar::rational(1, 3);
  CHECK(third.is_rational());
  CHECK(third * Scalar(3) == Scalar(1));
  Scalar sum;
  for (int i = 0; i < 300; ++i) sum += third;
  CHECK(sum == Scalar(100));
  CHECK(Scalar::pow_uint(Scalar::rational(1, 2), 200) ==
        Scalar(Rational(BigInt(1), pow(BigInt(2), 200))));
}

TEST_CASE("mixing with doubles degrades to float mode") {
  Scalar a = Scalar::rational(1, 3);
  Scalar b = Scalar::from_double(0.5);
  Scalar c = a + b;
  CHECK(!c.is_rational());
  CHECK(c.as_double() == doctest::Approx(1.0 / 3.0 + 0.5));
}

TEST_CASE("exact_from_double captures the binary value") {
  Scalar x = Scalar::exact_from_double(0.1);
  CHECK(x.is_rational());
  CHECK(x.as_double() == 0.1);
  CHECK(denominator(x.rat()) == (BigInt(1) << 55));
}

TEST_CASE("comparisons and helpers") {
  CHECK(Scalar::rational(1, 2) < Scalar::rational(2, 3));
  CHECK(Scalar::rational(-1, 2).is_negative());
  CHECK(Scalar(0).is_zero());
  CHECK(Scalar(7).is_integer());
  CHECK(Scalar(7).as_int64() == 7);
  CHECK(abs(Scalar::rational(-3, 4)) == Scalar::rational(3, 4));
  CHECK(max(Scalar(1), Scalar(2)) == Scalar(2));
}

TEST_CASE("approx_equal: exact for rationals, 1e-12 relative for doubles") {
  CHECK(approx_equal(Scalar::rational(1, 3), Scalar::rational(1, 3)));
  CHECK(!approx_equal(Scalar::rational(1, 3), Scalar::rational(1, 3) + Scalar(Rational(1, 1000000000000000))));
  Scalar x = Scalar::from_double(1.0);
  Scalar y = Scalar::from_double(1.0 + 5e-13);
  CHECK(approx_equal(x, y));
  CHECK(!approx_equal(x, Scalar::from_double(1.0 + 5e-12)));
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), Error);
}

TEST_CASE("fraction times its reciprocal is exactly one, both modes") {
  Frac r{Scalar::rational(3, 7), Scalar::rational(2, 5)};
  CHECK(r.times(r.reciprocal()).is_one_exact());
  Frac d{Scalar::from_double(0.3), Scalar::from_double(0.1)};
  CHECK(d.times(d.reciprocal()).is_one_exact());
  CHECK(!Frac{Scalar(2), Scalar(3)}.is_one_exact());
}
