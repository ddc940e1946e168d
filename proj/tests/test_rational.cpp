#include <doctest.h>

#include "ipr/rational.hpp"

using namespace ipr;

TEST_SUITE_BEGIN("rational");

TEST_CASE("construction reduces and normalizes the sign") {
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(-6, -4).str() == "3/2");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational(4, 2).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts p, -p and p/q only") {
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("3/6") == Rational(1, 2));
    CHECK(Rational::parse("-3/6") == Rational(-1, 2));
    CHECK(Rational::parse("+2") == Rational(2));
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/-2"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational::parse("a"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), ParseError);
    CHECK_THROWS_AS(Rational::parse("--1"), ParseError);
}

TEST_CASE("round trip through str") {
    for (long long n = -12; n <= 12; ++n)
        for (long long d = 1; d <= 9; ++d) {
            Rational q(n, d);
            CHECK(Rational::parse(q.str()) == q);
        }
}

TEST_CASE("field arithmetic") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a / b == Rational(3, 2));
    CHECK(-a == Rational(-1, 2));
    CHECK(a < Rational(2, 3));
    CHECK_THROWS_AS(a / Rational(0), std::invalid_argument);
}

TEST_CASE("to_int64") {
    CHECK(Rational(42).to_int64() == 42);
    CHECK(Rational(-8, 2).to_int64() == -4);
    CHECK_THROWS_AS(Rational(1, 2).to_int64(), std::invalid_argument);
}

TEST_SUITE_END();
