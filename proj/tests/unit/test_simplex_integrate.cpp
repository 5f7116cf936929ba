#include <doctest.h>

#include "tetracert/moments.hpp"
#include "tetracert/rational_poly.hpp"
#include "tetracert/simplex_integrate.hpp"

using namespace tetracert;

namespace {

RationalPoly power(const RationalPoly& p, unsigned e) {
    RationalPoly r(std::vector<Rational>{Rational(1)});
    for (unsigned i = 0; i < e; ++i) {
        r = r * p;
    }
    return r;
}

Rational integrate_unit(const RationalPoly& p) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
        s += p.coefficients()[i] / static_cast<unsigned long>(i + 1);
    }
    return s;
}

// Iterated exact integration: z over [0, 1-x-y], then y over [0, 1-x],
// then x over [0, 1]. The inner two steps collapse to powers of (1 - x).
Rational iterated_integral(unsigned l, unsigned m, unsigned n) {
    const RationalPoly one_minus_x(std::vector<Rational>{Rational(1), Rational(-1)});
    // int_0^{1-x} y^m (1-x-y)^{n+1} / (n+1) dy
    //   = (1-x)^{m+n+2} / (n+1) * sum_j C(n+1, j) (-1)^j / (m+j+1)
    Rational c = 0;
    for (unsigned j = 0; j <= n + 1; ++j) {
        Rational term(binomial(n + 1, j), 1);
        term /= m + j + 1;
        c += (j % 2 == 0) ? term : Rational(-term);
    }
    c /= n + 1;
    const RationalPoly inner = RationalPoly::monomial(c, l) * power(one_minus_x, m + n + 2);
    return integrate_unit(inner);
}

} // namespace

TEST_SUITE("simplex-integrate") {

TEST_CASE("closed-form examples") {
    CHECK(monomial_integral({0, 0, 0}) == make_rational(1, 6));
    CHECK(monomial_integral({1, 1, 1}) == make_rational(1, 720));
    CHECK(monomial_integral({2, 0, 0}) == make_rational(1, 60));
}

TEST_CASE("triple integral examples") {
    CHECK(triple_integral(Monomial9{}) == make_rational(1, 216));
    CHECK(triple_integral(Monomial9({1, 0, 0, 0, 0, 0, 0, 0, 0})) == make_rational(1, 864));
    const Rational e = make_rational(1, 720);
    CHECK(triple_integral(Monomial9({1, 1, 1, 1, 1, 1, 1, 1, 1})) == e * e * e);
}

TEST_CASE("agrees with iterated integration for exponents up to 6") {
    for (unsigned l = 0; l <= 6; ++l) {
        for (unsigned m = 0; m <= 6; ++m) {
            for (unsigned n = 0; n <= 6; ++n) {
                INFO("l=" << l << " m=" << m << " n=" << n);
                REQUIRE(monomial_integral({l, m, n}) == iterated_integral(l, m, n));
            }
        }
    }
}

TEST_CASE("symmetric in the exponents") {
    for (unsigned l = 0; l <= 9; ++l) {
        for (unsigned m = 0; m <= 9; ++m) {
            for (unsigned n = 0; n <= 9; ++n) {
                const Rational v = monomial_integral({l, m, n});
                REQUIRE(v == monomial_integral({m, l, n}));
                REQUIRE(v == monomial_integral({n, m, l}));
                REQUIRE(v == monomial_integral({l, n, m}));
            }
        }
    }
}

TEST_CASE("denominator divides (l+m+n+3)!") {
    for (unsigned l = 0; l <= 12; ++l) {
        for (unsigned m = 0; m <= 12; ++m) {
            for (unsigned n = 0; n <= 12; ++n) {
                const Rational v = monomial_integral({l, m, n});
                REQUIRE(factorial(l + m + n + 3) % v.get_den() == 0);
            }
        }
    }
}

TEST_CASE("triple integral is the product of the per-point integrals") {
    const Monomial9 mono({3, 0, 2, 1, 4, 0, 0, 2, 5});
    CHECK(triple_integral(mono) ==
          monomial_integral({3, 0, 2}) * monomial_integral({1, 4, 0}) * monomial_integral({0, 2, 5}));
}

}
