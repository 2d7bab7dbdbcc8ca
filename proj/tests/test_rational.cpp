#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cbp/rational.hpp"

using cbp::BigInt;
using cbp::Rational;

TEST_CASE("construction reduces to lowest terms") {
    CHECK(Rational::of(2, 4) == Rational::of(1, 2));
    CHECK(Rational::of(-2, 4) == Rational::of(-1, 2));
    CHECK(Rational::of(2, -4) == Rational::of(-1, 2));
    CHECK(Rational::of(0, 7).den() == 1);
    CHECK(Rational::of(6, 3).str() == "2");
    CHECK_THROWS_AS(Rational::of(1, 0), std::invalid_argument);
}

TEST_CASE("exact arithmetic") {
    const Rational third = Rational::of(1, 3);
    const Rational half = Rational::of(1, 2);
    CHECK(third + half == Rational::of(5, 6));
    CHECK(half - third == Rational::of(1, 6));
    CHECK(third * half == Rational::of(1, 6));
    CHECK(half / third == Rational::of(3, 2));
    CHECK((-third).str() == "-1/3");
    CHECK_THROWS_AS(half / Rational(0), std::invalid_argument);
}

TEST_CASE("exact comparisons") {
    CHECK(Rational::of(1, 3) < Rational::of(1, 2));
    CHECK(Rational::of(2, 6) <= Rational::of(1, 3));
    CHECK(Rational::of(7, 8) > Rational::of(6, 7));
    CHECK(Rational::of(1000000000, 3000000001) < Rational::of(1, 3));
}

TEST_CASE("parse and print round trip") {
    CHECK(Rational::parse("1/4").str() == "1/4");
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("-5/10").str() == "-1/2");
    CHECK(Rational::parse("0").is_zero());
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
}

TEST_CASE("big values stay exact") {
    Rational tiny = Rational::of(1, 1000000007);
    Rational sum;
    for (int i = 0; i < 50; ++i) {
        sum += tiny;
    }
    CHECK(sum == Rational::of(50, 1000000007));
    CHECK(sum.to_double() == doctest::Approx(50.0 / 1000000007.0));
}

TEST_CASE("lcm helper") {
    CHECK(cbp::lcm(BigInt(4), BigInt(6)) == 12);
    CHECK(cbp::lcm(BigInt(1), BigInt(9)) == 9);
}
