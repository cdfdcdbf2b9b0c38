#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/rational.hpp"
#include "core/rng.hpp"

using kdm::Rational;

TEST_CASE("normalization keeps lowest terms and positive denominator") {
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(-2, 4).str() == "-1/2");
    CHECK(Rational(2, -4).str() == "-1/2");
    CHECK(Rational(-2, -4).str() == "1/2");
    CHECK(Rational(0, -7).str() == "0/1");
    CHECK_THROWS_AS(Rational(1, 0), kdm::Error);
}

TEST_CASE("field arithmetic") {
    Rational a(1, 6), b(1, 10);
    CHECK((a + b).str() == "4/15");
    CHECK((a - b).str() == "1/15");
    CHECK((a * b).str() == "1/60");
    CHECK((a / b).str() == "5/3");
    CHECK((-a).str() == "-1/6");
    CHECK(a.inverse().str() == "6/1");
    CHECK(Rational::pow(Rational(2, 3), 5).str() == "32/243");
    CHECK(Rational::pow(Rational(2, 3), 0).str() == "1/1");
    CHECK_THROWS_AS(a / Rational(0), kdm::Error);

    kdm::SplitMix64 rng(17);
    for (int i = 0; i < 300; ++i) {
        long long n1 = static_cast<long long>(rng.below(2001)) - 1000;
        long long n2 = static_cast<long long>(rng.below(2001)) - 1000;
        long long d1 = 1 + static_cast<long long>(rng.below(1000));
        long long d2 = 1 + static_cast<long long>(rng.below(1000));
        Rational x(n1, d1), y(n2, d2);
        CHECK((x + y) - y == x);
        CHECK((x - y) + y == x);
        if (!y.is_zero()) CHECK((x / y) * y == x);
        CHECK(x * y == y * x);
    }
}

TEST_CASE("ordering is exact") {
    CHECK(Rational(1, 3) < Rational(34, 100));
    CHECK(Rational(-1, 2) < Rational(1, 3));
    CHECK(Rational(221, 256) > Rational(13, 16));
    CHECK(Rational(2, 4) == Rational(1, 2));
}

TEST_CASE("parsing") {
    CHECK(Rational::parse("3/4").str() == "3/4");
    CHECK(Rational::parse("-3/4").str() == "-3/4");
    CHECK(Rational::parse("42") == Rational(42));
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK_THROWS_AS(Rational::parse("/4"), kdm::Error);
    CHECK_THROWS_AS(Rational::parse("3/"), kdm::Error);
    CHECK_THROWS_AS(Rational::parse("a/b"), kdm::Error);
    CHECK_THROWS_AS(Rational::parse("1/0"), kdm::Error);
}

TEST_CASE("display forms") {
    CHECK(Rational(884).str() == "884/1");
    CHECK(Rational(884).display() == "884");
    CHECK(Rational(221, 256).display() == "221/256");
}

TEST_CASE("decimal rendering truncates") {
    CHECK(Rational(221, 256).decimal(12) == "0.863281250000");
    CHECK(Rational(1, 3).decimal(5) == "0.33333");
    CHECK(Rational(2, 3).decimal(5) == "0.66666");  // truncation, not rounding
    CHECK(Rational(-2, 3).decimal(3) == "-0.666");
    CHECK(Rational(7, 1).decimal(0) == "7");
    CHECK(Rational(15, 2).decimal(1) == "7.5");
}
