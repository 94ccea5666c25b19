#include <doctest.h>

#include <limits>
#include <random>

#include "volatix/rational.hpp"

using volatix::Rational;

TEST_CASE("rational normalizes sign and common factors") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).den() == 2);
    CHECK(Rational(0, -7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic is exact") {
    const Rational third(1, 3);
    CHECK(third + third + third == Rational(1));
    CHECK(Rational(1, 10) + Rational(2, 10) == Rational(3, 10));
    CHECK(Rational(7, 3) * Rational(3, 7) == Rational(1));
    CHECK(Rational(1) / Rational(3) == third);
    CHECK(Rational(5, 2) - Rational(1, 2) == Rational(2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational ordering cross-multiplies") {
    CHECK(Rational(1, 3) < Rational(34, 100));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(std::numeric_limits<std::int64_t>::max(), 3) > Rational(std::numeric_limits<std::int64_t>::max(), 4));
}

TEST_CASE("rational overflow is reported, not wrapped") {
    const Rational big(std::numeric_limits<std::int64_t>::max());
    CHECK_THROWS_AS(big * big, std::overflow_error);
    CHECK_THROWS_AS(big + big, std::overflow_error);
    // Products that reduce back into range are fine.
    CHECK(big * Rational(1, std::numeric_limits<std::int64_t>::max()) == Rational(1));
}

TEST_CASE("to_fixed rounds half away from zero") {
    CHECK(Rational(112, 6).to_fixed(2) == "18.67");
    CHECK(Rational(1, 8).to_fixed(2) == "0.13");
    CHECK(Rational(-1, 8).to_fixed(2) == "-0.13");
    CHECK(Rational(5, 1000).to_fixed(2) == "0.01");
    CHECK(Rational(1, 1000).to_fixed(2) == "0.00");
    CHECK(Rational(-1, 1000).to_fixed(2) == "0.00");
    CHECK(Rational(5, 2).to_fixed(0) == "3");
    CHECK(Rational(3699, 171).to_fixed(2) == "21.63");
    CHECK(Rational(7).to_fixed(2) == "7.00");
}

TEST_CASE("to_significant keeps two figures across magnitudes") {
    CHECK(Rational(3881 * 100, 11639).to_significant(2) == "33");
    CHECK(Rational(73 * 100, 11639).to_significant(2) == "0.63");
    CHECK(Rational(1061 * 100, 11639).to_significant(2) == "9.1");
    CHECK(Rational(100).to_significant(2) == "100");
    CHECK(Rational(999, 10).to_significant(2) == "100");
    CHECK(Rational(1, 11639).to_significant(2) == "0.000086");
    CHECK(Rational(0).to_significant(2) == "0");
    CHECK(Rational(-25, 10).to_significant(2) == "-2.5");
}

TEST_CASE("parse accepts decimals and fractions exactly") {
    CHECK(Rational::parse("16.15") == Rational(1615, 100));
    CHECK(Rational::parse("-0.5") == Rational(-1, 2));
    CHECK(Rational::parse(".25") == Rational(1, 4));
    CHECK(Rational::parse("7/3") == Rational(7, 3));
    CHECK(Rational::parse("42") == Rational(42));
    for (const char* bad : {"", "abc", "1.2.3", "1/0", "-", "1e5", "3/"}) CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
}

TEST_CASE("parse and to_string round trip") {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<std::int64_t> num(-1'000'000'000, 1'000'000'000), den(1, 1'000'000);
    for (int i = 0; i < 2000; ++i) {
        const Rational r(num(gen), den(gen));
        CHECK(Rational::parse(r.to_string()) == r);
    }
}
