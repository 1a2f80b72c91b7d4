#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "qsalloc/rational.hpp"

using qsalloc::BigInt;
using qsalloc::Rational;

TEST_CASE("construction canonicalizes") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, 4).fraction_str() == "1/2");
  CHECK(Rational(1, -2).fraction_str() == "-1/2");
  CHECK(Rational(0, 7).fraction_str() == "0/1");
  CHECK(Rational(5).fraction_str() == "5/1");
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parse decimal and fraction text") {
  CHECK(Rational::parse("0.35") == Rational(7, 20));
  CHECK(Rational::parse("35/100") == Rational(7, 20));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK(Rational::parse("5.") == Rational(5));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational::parse("+3/4") == Rational(3, 4));
  CHECK(Rational::parse("1.0") == Rational(1));
  CHECK(Rational::parse("0.1") == Rational(1, 10));
  CHECK(Rational::parse("1234567890123456789012345678901234567890") ==
        Rational(BigInt("1234567890123456789012345678901234567890")));

  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1e5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("."), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  const Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK(pow(Rational(1, 2), 4) == Rational(1, 16));
  CHECK(pow(Rational(0), 0) == Rational(1));
  CHECK(-Rational(1, 3) < Rational(0));
  CHECK(Rational(5, 7) > Rational(2, 3));
}

TEST_CASE("from_double is exact on dyadic values") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(0.0).is_zero());
  CHECK(Rational::from_double(-1.25) == Rational(-5, 4));
  // 0.1 is not representable; the conversion preserves the actual bits.
  CHECK(Rational::from_double(0.1) != Rational(1, 10));
  CHECK(Rational::from_double(0.1).to_double() == 0.1);
}

TEST_CASE("decimal rendering: 12 significant digits, half-even") {
  CHECK(Rational(0).decimal_str() == "0");
  CHECK(Rational(1, 3).decimal_str() == "0.333333333333");
  CHECK(Rational(2, 3).decimal_str() == "0.666666666667");
  CHECK(Rational(1, 7).decimal_str() == "0.142857142857");
  CHECK(Rational(9, 5).decimal_str() == "1.80000000000");
  CHECK(Rational(1).decimal_str() == "1.00000000000");
  CHECK(Rational(9, 29).decimal_str() == "0.310344827586");
  CHECK(Rational(3232, 38367).decimal_str() == "0.0842390596085");
  CHECK(Rational(23, 35).decimal_str() == "0.657142857143");
  CHECK(Rational(513, 625).decimal_str() == "0.820800000000");
  CHECK(Rational(-1, 3).decimal_str() == "-0.333333333333");
  CHECK(Rational(BigInt(1234567890123)).decimal_str() == "1234567890120");
}

TEST_CASE("decimal rendering: scientific form outside the positional window") {
  CHECK(Rational(1, 142506).decimal_str() == "7.01724839656e-06");
  CHECK(Rational(10, 3253887).decimal_str() == "3.07324747295e-06");
  CHECK(Rational(1, 100000).decimal_str() == "1.00000000000e-05");
  CHECK(Rational(1, 10000).decimal_str() == "0.000100000000000");
  CHECK((Rational(BigInt("123456789")) * pow(Rational(10), 12)).decimal_str() ==
        "1.23456789000e+20");
}

TEST_CASE("decimal rendering: ties go to even") {
  CHECK(Rational(1, 8).decimal_str(2) == "0.12");
  CHECK(Rational(3, 8).decimal_str(2) == "0.38");
  CHECK(Rational(25, 2).decimal_str(2) == "12");
  CHECK(Rational(35, 2).decimal_str(2) == "18");
  // rounding across a decade boundary
  CHECK(Rational(999, 1000).decimal_str(2) == "1.0");
  CHECK_THROWS_AS(Rational(1).decimal_str(0), std::invalid_argument);
}
