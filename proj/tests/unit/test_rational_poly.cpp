#include <doctest.h>

#include "generators.hpp"
#include "tetracert/rational_poly.hpp"

using namespace tetracert;

namespace {

RationalPoly from_roots(const std::vector<Rational>& roots) {
    RationalPoly p(std::vector<Rational>{Rational(1)});
    for (const auto& r : roots) {
        p = p * RationalPoly(std::vector<Rational>{-r, Rational(1)});
    }
    return p;
}

} // namespace

TEST_SUITE("rational-poly") {

TEST_CASE("normalization and arithmetic") {
    const RationalPoly p({Rational(1), Rational(2), Rational(0)});
    CHECK(p.degree() == 1);
    CHECK(RationalPoly({Rational(0)}).is_zero());
    CHECK((p - p).is_zero());
    CHECK(p(Rational(3)) == 7);
    CHECK(p.derivative() == RationalPoly({Rational(2)}));
    CHECK(RationalPoly::monomial(Rational(5), 3).degree() == 3);
}

TEST_CASE("divmod reconstructs the dividend") {
    testing::Gen g(7);
    for (int i = 0; i < 100; ++i) {
        std::vector<Rational> a(g.uniform(1, 10)), b(g.uniform(1, 6));
        for (auto& c : a) {
            c = g.rational(20, 9);
        }
        for (auto& c : b) {
            c = g.rational(20, 9);
        }
        b.back() = g.uniform(1, 5);
        const RationalPoly pa(a), pb(b);
        const auto [q, r] = divmod(pa, pb);
        REQUIRE(q * pb + r == pa);
        REQUIRE(r.degree() < pb.degree());
    }
    CHECK_THROWS(divmod(RationalPoly({Rational(1)}), RationalPoly()));
}

TEST_CASE("Sturm root counts") {
    const RationalPoly p = from_roots({make_rational(1, 10), make_rational(1, 5), make_rational(1, 2)});
    CHECK(count_roots(p, Rational(0), make_rational(1, 3)) == 2);
    CHECK(count_roots(p, Rational(0), Rational(1)) == 3);
    CHECK(count_roots(p, make_rational(1, 5), make_rational(1, 2)) == 2);  // closed interval
    CHECK(count_roots(p, make_rational(3, 10), make_rational(2, 5)) == 0);
    // Repeated roots count once.
    const RationalPoly sq = from_roots({make_rational(1, 7), make_rational(1, 7), make_rational(2, 7)});
    CHECK(count_roots(sq, Rational(0), Rational(1)) == 2);
    // x^2 + 1 has no real roots.
    CHECK(count_roots(RationalPoly({Rational(1), Rational(0), Rational(1)}), Rational(-5), Rational(5)) == 0);
    CHECK(count_roots(RationalPoly({Rational(3)}), Rational(0), Rational(1)) == 0);
}

TEST_CASE("Sturm counts match random root sets") {
    testing::Gen g(17);
    for (int i = 0; i < 60; ++i) {
        std::vector<Rational> roots;
        const unsigned n = g.uniform(1, 7);
        for (unsigned j = 0; j < n; ++j) {
            roots.push_back(g.rational(10, 7));
        }
        const Rational a = g.rational(10, 3);
        const Rational b = a + g.positive_at_most(Rational(4), 5);
        std::set<Rational> inside;
        for (const auto& r : roots) {
            if (a <= r && r <= b) {
                inside.insert(r);
            }
        }
        REQUIRE(count_roots(from_roots(roots), a, b) == static_cast<int>(inside.size()));
    }
}

}
