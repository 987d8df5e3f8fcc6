#include <doctest.h>

#include <random>

#include "pathint/rational.hpp"

using pathint::symexpr::Rational;

TEST_CASE("rational normalization and accessors") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(0, 5).is_zero());
  CHECK(Rational(1).is_one());
  CHECK(Rational(-1, 3).is_negative());
  CHECK(Rational(6, 3).is_integer());
  CHECK_FALSE(Rational(2, 3).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse(" 7 ") == Rational(7));
  CHECK(Rational::parse("+2/6") == Rational(1, 3));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("rational arithmetic") {
  Rational a(1, 2), b(1, 3);
  CHECK(a + b == Rational(5, 6));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 6));
  CHECK(a / b == Rational(3, 2));
  CHECK(-a == Rational(-1, 2));
  CHECK(a.inv() == Rational(2));
  CHECK_THROWS_AS(Rational(0).inv(), std::domain_error);
  CHECK(a < b * Rational(2));
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow(0) == Rational(1));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25));
  CHECK(Rational(-5, 2).str() == "-5/2");
  CHECK(Rational(4).str() == "4");
}

TEST_CASE("rational field laws on random values") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 12);
  auto draw = [&] { return Rational(num(rng), den(rng)); };
  for (int i = 0; i < 200; ++i) {
    Rational a = draw(), b = draw(), c = draw();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}
