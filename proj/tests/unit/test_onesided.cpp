#include <doctest.h>

#include <sstream>

#include "generators.hpp"
#include "tetracert/certificate.hpp"
#include "tetracert/onesided.hpp"

using namespace tetracert;

TEST_SUITE("onesided") {

TEST_CASE("node set validation") {
    CHECK_THROWS_AS(NodeSet(std::vector<Rational>{}), std::invalid_argument);
    CHECK_THROWS_AS(NodeSet({Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(NodeSet({make_rational(1, 5), make_rational(1, 5)}), std::invalid_argument);
    CHECK_THROWS_AS(NodeSet({make_rational(1, 4), make_rational(1, 5)}), std::invalid_argument);
    CHECK(reference_nodes().size() == 7);
    CHECK(reference_nodes().all_at_most(make_rational(1, 3)));
}

TEST_CASE("single node 1/3 has the closed form 1/6 + 3/2 x^2") {
    const EvenPoly p = hermite_onesided(NodeSet({make_rational(1, 3)}));
    CHECK(p == EvenPoly({make_rational(1, 6), make_rational(3, 2)}));
    CHECK(eval(p, Rational(0)) == make_rational(1, 6));
    CHECK(eval(p, make_rational(1, 3)) == make_rational(1, 3));
    CHECK(eval_derivative(p, make_rational(1, 3)) == 1);
}

TEST_CASE("single node closed form x0/2 + x^2/(2 x0)") {
    testing::Gen g(3);
    for (int i = 0; i < 50; ++i) {
        const Rational x0 = g.positive_at_most(Rational(1, 3), 1000);
        const EvenPoly p = hermite_onesided(NodeSet({x0}));
        REQUIRE(p == EvenPoly({x0 / 2, 1 / (2 * x0)}));
    }
}

TEST_CASE("reference nodes give degree 26") {
    const EvenPoly p = hermite_onesided(reference_nodes());
    CHECK(p.degree() == 26);
    CHECK(p.half_degree() == 13);
    const NodeSet nodes = reference_nodes();
    for (const auto& x : nodes.values()) {
        CHECK(eval(p, x) == x);
        CHECK(eval_derivative(p, x) == 1);
    }
}

TEST_CASE("interpolation conditions and degree for random nodes") {
    testing::Gen g(101);
    for (int trial = 0; trial < 100; ++trial) {
        const unsigned m = g.uniform(0, 4);
        const NodeSet nodes = g.nodes(m + 1, Rational(1, 3), 200);
        const EvenPoly p = hermite_onesided(nodes);
        REQUIRE(p.degree() == 2 * (2 * m + 1));
        for (const auto& x : nodes.values()) {
            REQUIRE(eval(p, x) == x);
            REQUIRE(eval_derivative(p, x) == 1);
            REQUIRE(eval(p, -x) == x);
        }
    }
}

TEST_CASE("dominance on a 10^4-point exact grid") {
    testing::Gen g(202);
    for (int trial = 0; trial < 10; ++trial) {
        const NodeSet nodes = g.nodes(g.uniform(1, 4), Rational(1, 3), 100);
        const EvenPoly p = hermite_onesided(nodes);
        for (long i = 0; i <= 10000; ++i) {
            const Rational x = make_rational(i, 30000);
            REQUIRE(eval(p, x) >= x);
        }
    }
    const EvenPoly cert = hermite_onesided(reference_nodes());
    for (long i = 0; i <= 10000; ++i) {
        const Rational x = make_rational(i, 30000);
        REQUIRE(eval(cert, x) >= x);
    }
}

TEST_CASE("double roots: P(x) - x is divisible by prod (x - x_j)^2") {
    testing::Gen g(303);
    for (int trial = 0; trial < 50; ++trial) {
        const NodeSet nodes = g.nodes(g.uniform(1, 5), Rational(1, 3), 300);
        const EvenPoly p = hermite_onesided(nodes);
        RationalPoly divisor(std::vector<Rational>{Rational(1)});
        for (const auto& x : nodes.values()) {
            const RationalPoly lin(std::vector<Rational>{-x, Rational(1)});
            divisor = divisor * lin * lin;
        }
        REQUIRE(divmod(dominance_gap(p), divisor).second.is_zero());
    }
}

TEST_CASE("newton coefficients rebuild the interpolant") {
    const NodeSet nodes({make_rational(1, 10), make_rational(1, 4)});
    const auto c = hermite_divided_differences(nodes);
    REQUIRE(c.size() == 4);
    CHECK(c[0] == make_rational(1, 10));
    CHECK(c[1] == 5);  // 1 / (2 x_0)
    // Evaluate the Newton form at t = 1/25 and compare with the monomial form.
    const Rational t = make_rational(1, 25);
    const Rational t0 = make_rational(1, 100);
    const Rational t1 = make_rational(1, 16);
    const Rational newton = c[0] + (t - t0) * (c[1] + (t - t0) * (c[2] + (t - t1) * c[3]));
    CHECK(eval(hermite_onesided(nodes), make_rational(1, 5)) == newton);
}

TEST_CASE("endpoint construction") {
    const Rational third = make_rational(1, 3);
    CHECK_THROWS_AS(endpoint_onesided(NodeSet({make_rational(1, 4)})), std::invalid_argument);
    // Only the value at 1/3: the constant 1/3.
    CHECK(endpoint_onesided(NodeSet({third})) == EvenPoly({third}));

    testing::Gen g(404);
    for (int trial = 0; trial < 30; ++trial) {
        const unsigned m = g.uniform(1, 4);
        std::vector<Rational> v = g.nodes(m, make_rational(1, 4), 100).values();
        v.push_back(third);
        const NodeSet nodes(v);
        const EvenPoly p = endpoint_onesided(nodes);
        REQUIRE(p.degree() == 4 * m);
        REQUIRE(eval(p, third) == third);
        for (unsigned j = 0; j < m; ++j) {
            REQUIRE(eval(p, nodes[j]) == nodes[j]);
            REQUIRE(eval_derivative(p, nodes[j]) == 1);
        }
        for (long i = 0; i <= 300; ++i) {
            REQUIRE(eval(p, make_rational(i, 900)) >= make_rational(i, 900));
        }
    }
}

TEST_CASE("expected value") {
    MomentTable t;
    t.set(1, make_rational(1, 2000), Provenance::fast);
    CHECK(expected_value(EvenPoly({make_rational(2, 7)}), t) == make_rational(2, 7));
    const EvenPoly p = hermite_onesided(NodeSet({make_rational(1, 3)}));
    CHECK(expected_value(p, t) == make_rational(2009, 12000));

    try {
        expected_value(hermite_onesided(reference_nodes()), t);
        FAIL("expected MissingMomentError");
    } catch (const MissingMomentError& e) {
        CHECK(e.orders().size() == 12);
        CHECK(e.orders().front() == 2);
        CHECK(e.orders().back() == 13);
        CHECK(std::string(e.what()).find("26") != std::string::npos);
    }
}

TEST_CASE("node file round trip") {
    std::ostringstream out;
    write_nodes(out, reference_nodes());
    CHECK(out.str() == "1/83\n1/22\n1/11\n2/15\n2/11\n5/22\n4/15\n");
    std::istringstream in("# comment\n\n1/83\n 1/22 \n1/11\n2/15\n2/11\n5/22\n4/15\n");
    CHECK(read_nodes(in) == reference_nodes());
    std::istringstream bad("1/3\n1/4\n");
    CHECK_THROWS(read_nodes(bad));
    std::istringstream garbage("one third\n");
    CHECK_THROWS(read_nodes(garbage));
}

TEST_CASE("even polynomial file round trip") {
    const EvenPoly p = hermite_onesided(reference_nodes());
    std::ostringstream out;
    write_even_poly(out, p);
    CHECK(out.str().rfind("even-poly v1\n0\t", 0) == 0);
    std::istringstream in(out.str());
    CHECK(read_even_poly(in) == p);
}

}
