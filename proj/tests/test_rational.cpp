#include <doctest.h>

#include <stdexcept>

#include "offswitch/rational.hpp"

using offswitch::Rational;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(3, 10) * Rational(1, 2) == Rational(3, 20));
    CHECK(Rational(1) - Rational(3, 10) == Rational(7, 10));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-5, 3) < Rational(0));
}

TEST_CASE("rational parsing and formatting round-trip") {
    CHECK(Rational::parse("3/10") == Rational(3, 10));
    CHECK(Rational::parse("-1/2") == Rational(-1, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational(17, 20).str() == "17/20");
    CHECK(Rational(4).str() == "4");
    CHECK(Rational::parse(Rational(22, 7).str()) == Rational(22, 7));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("rational powers and overflow detection") {
    CHECK(Rational(3, 5).pow(0) == Rational(1));
    CHECK(Rational(3, 5).pow(3) == Rational(27, 125));
    Rational huge(1'000'000'007, 1);
    CHECK_THROWS_AS(huge * huge * huge, std::overflow_error);
}
