#include <doctest.h>

#include <numeric>
#include <thread>

#include "generators.hpp"
#include "tetracert/exact.hpp"

using namespace tetracert;

TEST_SUITE("exact") {

TEST_CASE("factorial small values") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(1) == 1);
    CHECK(factorial(6) == 720);
}

TEST_CASE("factorial 81 against an iterative product") {
    BigInteger p = 1;
    for (unsigned i = 2; i <= 81; ++i) {
        p *= i;
    }
    CHECK(factorial(81) == p);
    CHECK(factorial(81).get_str().size() == 121);
}

TEST_CASE("factorial recurrence up to 200") {
    for (unsigned n = 1; n <= 200; ++n) {
        REQUIRE(factorial(n) == n * factorial(n - 1));
    }
}

TEST_CASE("factorial is safe under concurrent first use") {
    std::vector<BigInteger> out(8);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < out.size(); ++t) {
            pool.emplace_back([&out, t] { out[t] = factorial(300 + 7 * t); });
        }
    }
    for (unsigned t = 0; t < out.size(); ++t) {
        CHECK(out[t] == factorial(300 + 7 * t - 1) * (300 + 7 * t));
    }
}

TEST_CASE("multinomial examples") {
    std::vector<unsigned> parts(18, 0);
    parts[0] = 2;
    parts[1] = 1;
    parts[2] = 1;
    CHECK(multinomial(4, parts) == 12);

    std::fill(parts.begin(), parts.end(), 0);
    parts[0] = 2;
    CHECK(multinomial(2, parts) == 1);

    std::fill(parts.begin(), parts.end(), 0);
    std::fill(parts.begin(), parts.begin() + 13, 2);
    BigInteger two13 = 1;
    two13 <<= 13;
    CHECK(multinomial(26, parts) == factorial(26) / two13);
}

TEST_CASE("multinomial rejects parts that do not sum to n") {
    const std::vector<unsigned> parts{1, 1, 1};
    CHECK_THROWS_AS(multinomial(4, parts), std::invalid_argument);
    CHECK_THROWS_AS(multinomial(2, parts), std::invalid_argument);
}

TEST_CASE("multinomial times prod factorials is n! (random)") {
    testing::Gen g(11);
    for (int trial = 0; trial < 300; ++trial) {
        const unsigned count = g.uniform(1, 18);
        std::vector<unsigned> parts(count);
        for (auto& p : parts) {
            p = g.uniform(0, 6);
        }
        const unsigned n = std::accumulate(parts.begin(), parts.end(), 0u);
        BigInteger prod = multinomial(n, parts);
        for (unsigned p : parts) {
            prod *= factorial(p);
        }
        REQUIRE(prod == factorial(n));
    }
}

TEST_CASE("binomial and powers") {
    CHECK(binomial(23, 17) == 100947);
    CHECK(binomial(5, 7) == 0);
    CHECK(pow_int(-3, 3) == -27);
    CHECK(pow3(-2) == make_rational(1, 9));
    CHECK(pow3(0) == 1);
    CHECK(pow3(4) == 81);
}

TEST_CASE("rationals are canonical") {
    const Rational q = make_rational(6, -4);
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    CHECK(is_reduced(q));
    CHECK_THROWS(make_rational(1, 0));

    testing::Gen g(5);
    for (int i = 0; i < 200; ++i) {
        const Rational a = g.rational(1000, 1000);
        const Rational b = g.rational(1000, 1000);
        REQUIRE(is_reduced(a * b));
        REQUIRE(is_reduced(a + b));
        REQUIRE(is_reduced(a - b));
    }
}

TEST_CASE("parse and print") {
    CHECK(parse_rational("1/83") == make_rational(1, 83));
    CHECK(parse_rational(" 10/4 ") == make_rational(5, 2));
    CHECK(parse_rational("-7") == -7);
    CHECK(to_string(make_rational(2, 4)) == "1/2");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/2/3"));
    CHECK_THROWS(parse_rational(""));

    testing::Gen g(9);
    for (int i = 0; i < 100; ++i) {
        const Rational q = g.rational(1L << 40, 1L << 40);
        REQUIRE(parse_rational(to_string(q)) == q);
    }
}

TEST_CASE("decimal expansion truncates") {
    CHECK(to_decimal(make_rational(1, 3), 5) == "0.33333");
    CHECK(to_decimal(make_rational(2, 3), 5) == "0.66666");
    CHECK(to_decimal(make_rational(-1, 8), 4) == "-0.1250");
    CHECK(to_decimal(make_rational(7, 2), 0) == "3");
}

TEST_CASE("pi squared enclosure") {
    const RationalInterval pi2 = pi_squared_enclosure();
    CHECK(pi2.lo < pi2.hi);
    CHECK(pi2.width() <= make_rational(1, 1'000'000'000'000L));
    CHECK(pi2.lo >= make_rational(98696, 10000));
    CHECK(pi2.hi <= make_rational(98697, 10000));
    // 9.869604401089358 to 12 digits
    CHECK(to_decimal(pi2.midpoint(), 12) == "9.869604401089");
    CHECK(is_reduced(pi2.lo));
    CHECK(is_reduced(pi2.hi));

    const RationalInterval coarse = pi_squared_enclosure(make_rational(1, 1000));
    CHECK(coarse.width() <= make_rational(1, 1000));
    CHECK(coarse.lo <= pi2.lo);
    CHECK(coarse.hi >= pi2.hi);
}

TEST_CASE("target enclosure orientation") {
    const RationalInterval t = target_enclosure();
    const Rational base = make_rational(13, 720);
    CHECK(t.lo < t.hi);
    CHECK(t.width() <= make_rational(1, 1'000'000'000'000L) / 15015);
    // 9.8696 < pi^2 < 9.8697, so the whole enclosure sits strictly between the two.
    CHECK(t.lo > base - make_rational(98697, 10000) / 15015);
    CHECK(t.hi < base - make_rational(98696, 10000) / 15015);
    CHECK(to_decimal(t.lo, 5) == "0.01739");
    const RationalInterval pi2 = pi_squared_enclosure();
    CHECK(t.lo == base - pi2.hi / 15015);
    CHECK(t.hi == base - pi2.lo / 15015);
}

}
