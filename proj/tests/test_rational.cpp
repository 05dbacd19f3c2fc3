#include "doctest.h"
#include "lvi/rational.hpp"

using lvi::parse_rational;
using lvi::Rational;

TEST_CASE("parse fractions and integers") {
  CHECK(parse_rational("3/6") == Rational(1) / 2);
  CHECK(parse_rational("-1/10") == Rational(-1) / 10);
  CHECK(parse_rational("42") == Rational(42));
  CHECK(lvi::to_string(parse_rational("4/8")) == "1/2");
  CHECK(lvi::to_string(parse_rational("-6/3")) == "-2");
}

TEST_CASE("decimals are exact") {
  CHECK(parse_rational("0.35") == Rational(7) / 20);
  CHECK(parse_rational("-1.25e-1") == Rational(-1) / 8);
  CHECK(parse_rational(".5") == Rational(1) / 2);
  CHECK(parse_rational("2e3") == Rational(2000));
  // 0.1 in binary floating point is not 1/10; here it must be.
  CHECK(parse_rational("0.1") * 10 == 1);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1..2"), std::invalid_argument);
}

TEST_CASE("pow and ceil") {
  CHECK(lvi::pow(Rational(1) / 2, 3) == Rational(1) / 8);
  CHECK(lvi::pow(Rational(5), 0) == 1);
  CHECK(lvi::ceil(Rational(7) / 2) == 4);
  CHECK(lvi::ceil(Rational(-7) / 2) == -3);
  CHECK(lvi::ceil(Rational(3)) == 3);
}
