#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "orient/rational.hpp"

using orient::Rational;

TEST_SUITE("rational") {
  TEST_CASE("construction canonicalizes") {
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(-1, -2).str() == "1/2");
    CHECK(Rational(1, -2).str() == "-1/2");
    CHECK(Rational(3, 1).str() == "3");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational().is_zero());
    CHECK(Rational(5).str() == "5");
  }

  TEST_CASE("zero denominator rejected") {
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  }

  TEST_CASE("parse accepts canonical and reducible forms") {
    CHECK(Rational::parse("5/8").str() == "5/8");
    CHECK(Rational::parse("-3/9").str() == "-1/3");
    CHECK(Rational::parse("7").str() == "7");
    CHECK(Rational::parse("+2/4").str() == "1/2");
    CHECK(Rational::parse("0/5").is_zero());
  }

  TEST_CASE("parse rejects malformed input") {
    for (const char* bad : {"", "1/", "/2", "1/0", "1.5", "a/b", "1 /2", "1//2", "--1/2", "1/-2"})
      CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
  }

  TEST_CASE("arithmetic is exact") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK((-Rational(1, 2)).str() == "-1/2");
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::invalid_argument);
  }

  TEST_CASE("comparisons are total order") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(1, 3) <= Rational(1, 3));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(3, 4) > Rational(2, 3));
    CHECK(Rational(1, 2) != Rational(1, 3));
  }

  TEST_CASE("pow by repeated squaring") {
    CHECK(Rational::pow(Rational(1, 2), 10) == Rational(1, 1024));
    CHECK(Rational::pow(Rational(2, 3), 0) == Rational(1));
    CHECK(Rational::pow(Rational(0), 5).is_zero());
    CHECK(Rational::pow(Rational(-1, 2), 3) == Rational(-1, 8));
  }

  TEST_CASE("probability helpers") {
    CHECK(orient::complement(Rational(1, 4)) == Rational(3, 4));
    CHECK(orient::is_probability(Rational(0)));
    CHECK(orient::is_probability(Rational(1)));
    CHECK(!orient::is_probability(Rational(5, 4)));
    CHECK(!orient::is_probability(Rational(-1, 4)));
    CHECK_THROWS_AS(orient::complement(Rational(5, 4)), std::domain_error);
  }

  TEST_CASE("conversion and accessors") {
    CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
    CHECK(Rational(-1, 3).sign() == -1);
    CHECK(Rational(0).sign() == 0);
    CHECK(Rational(7, 7).is_one());
    std::ostringstream os;
    os << Rational(5, 8);
    CHECK(os.str() == "5/8");
  }
}
