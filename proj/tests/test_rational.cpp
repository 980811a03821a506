#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gammadeg/rational.hpp"

using gammadeg::BigInt;
using gammadeg::Rational;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, -7).den() == 1);
    CHECK(Rational(6, 3).str() == "2");
    CHECK(Rational(9, 10).den() == 10);
}

TEST_CASE("zero denominator is rejected") {
    CHECK_THROWS_AS(Rational(1, 0), gammadeg::Error);
    CHECK_THROWS_AS(Rational(BigInt(3), BigInt(0)), gammadeg::Error);
    CHECK_THROWS_AS(Rational::parse("1/0"), gammadeg::ParseError);
}

TEST_CASE("parse and str round-trip") {
    for (const char* s : {"0", "1", "-1", "1/2", "-9/10", "17/36", "-1/104729"}) {
        const Rational r = Rational::parse(s);
        CHECK(r.str() == s);
        CHECK(Rational::parse(r.str()) == r);
    }
    CHECK(Rational::parse("2/4").str() == "1/2");
    CHECK_THROWS_AS(Rational::parse(""), gammadeg::ParseError);
    CHECK_THROWS_AS(Rational::parse("x"), gammadeg::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/"), gammadeg::ParseError);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), gammadeg::ParseError);
}

TEST_CASE("exact arithmetic on hand-checked values") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
    CHECK(Rational(3, 4) * Rational(2, 9) == Rational(1, 6));
    CHECK(Rational(3, 4) / Rational(9, 2) == Rational(1, 6));
    CHECK_THROWS_AS(Rational(1) / Rational(0), gammadeg::Error);
    // no precision loss on small denominators that break binary floats
    Rational tenth(1, 10), sum(0);
    for (int i = 0; i < 10; ++i) sum += tenth;
    CHECK(sum == Rational(1));
}

TEST_CASE("ordering agrees with cross-multiplication") {
    CHECK(Rational(9, 10) > Rational(1, 2)); // 9*2 > 10*1
    CHECK(Rational(9, 10) < Rational(1));    // 9 < 10
    CHECK(Rational(-9, 10) < Rational(-1, 2));
    CHECK(Rational(1, 3) < Rational(2, 5)); // 5 < 6
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> num(-50, 50), den(1, 50);
    for (int i = 0; i < 500; ++i) {
        const long long an = num(rng), ad = den(rng), bn = num(rng), bd = den(rng);
        const Rational a(an, ad), b(bn, bd);
        CHECK((a < b) == (an * bd < bn * ad));
        CHECK((a == b) == (an * bd == bn * ad));
    }
}

TEST_CASE("field laws on random rationals") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> num(-30, 30), den(1, 30);
    for (int i = 0; i < 300; ++i) {
        const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        CHECK(a + -a == Rational(0));
        CHECK(a.abs() >= Rational(0));
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}

TEST_CASE("big values never overflow") {
    Rational p(1);
    for (int i = 0; i < 40; ++i) p *= Rational(1, 3);
    // 3^40 > 2^63: only arbitrary precision survives this
    BigInt d = 1;
    for (int i = 0; i < 40; ++i) d *= 3;
    CHECK(p == Rational(BigInt(1), d));
    CHECK(p > Rational(0));
}

TEST_CASE("lcm of big integers") {
    CHECK(gammadeg::lcm(BigInt(4), BigInt(6)) == 12);
    CHECK(gammadeg::lcm(BigInt(1), BigInt(7)) == 7);
    CHECK(gammadeg::lcm(BigInt(12), BigInt(18)) == 36);
}
