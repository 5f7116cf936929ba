#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tetracert/montecarlo.hpp"

using namespace tetracert;

TEST_SUITE("montecarlo") {

TEST_CASE("volumes") {
    const Tetrahedron t = standard_tetrahedron();
    CHECK(tetra_volume(t[0], t[1], t[2], t[3]) == doctest::Approx(1.0 / 6.0));
    CHECK(tetra_volume(t[1], t[1], t[1], t[1]) == 0.0);
    const Tetrahedron u = unit_volume_tetrahedron();
    CHECK(tetra_volume(u[0], u[1], u[2], u[3]) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("samples stay inside and have the right mean") {
    std::mt19937_64 rng(7);
    const Tetrahedron t = standard_tetrahedron();
    const int n = 1'000'000;
    double sx = 0, sy = 0, sz = 0;
    int small = 0;
    for (int i = 0; i < n; ++i) {
        const Point3 p = sample_uniform_tetrahedron(rng, t);
        REQUIRE((p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x + p.y + p.z <= 1 + 1e-15));
        sx += p.x;
        sy += p.y;
        sz += p.z;
        small += (p.x + p.y + p.z <= 0.5);
    }
    // Each coordinate is Beta(1, 3): mean 1/4, variance 3/80.
    const double se = std::sqrt(3.0 / 80.0 / n);
    CHECK(std::abs(sx / n - 0.25) < 4 * se);
    CHECK(std::abs(sy / n - 0.25) < 4 * se);
    CHECK(std::abs(sz / n - 0.25) < 4 * se);
    const double frac = static_cast<double>(small) / n;
    CHECK(std::abs(frac - 0.125) < 4 * std::sqrt(0.125 * 0.875 / n));
}

TEST_CASE("degenerate tetrahedra are rejected") {
    std::mt19937_64 rng(1);
    const Point3 o{};
    CHECK_THROWS_AS(sample_uniform_tetrahedron(rng, {o, o, o, o}), std::invalid_argument);
    CHECK_THROWS_AS(sample_uniform_tetrahedron(rng, {o, Point3{1, 0, 0}, Point3{2, 0, 0}, Point3{3, 0, 0}}),
                    std::invalid_argument);
}

TEST_CASE("mode parsing") {
    CHECK(parse_mc_mode("four") == McMode::all_random_four);
    CHECK(parse_mc_mode("centroid") == McMode::three_plus_centroid);
    CHECK_THROWS(parse_mc_mode("five"));
    CHECK(to_string(McMode::three_plus_centroid) == "centroid");
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(estimate(McMode::all_random_four, 1, 999, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate(McMode::all_random_four, 0, 1000, 1), std::invalid_argument);
}

TEST_CASE("estimates agree with the exact values") {
    const std::uint64_t n = 2'000'000;
    const double target = 13.0 / 720.0 - std::numbers::pi * std::numbers::pi / 15015.0;
    const EstimatorResult four = estimate(McMode::all_random_four, 1, n, 11);
    CHECK(std::abs(four.mean - target) < 4 * four.standard_error);
    const EstimatorResult m2 = estimate(McMode::three_plus_centroid, 2, n, 12);
    CHECK(std::abs(m2.mean - 1.0 / 2000) < 4 * m2.standard_error);
    const EstimatorResult m4 = estimate(McMode::three_plus_centroid, 4, n, 13);
    CHECK(std::abs(m4.mean - 43.0 / 27783000) < 4 * m4.standard_error);
    CHECK(four.samples == n);
    CHECK(four.seed == 11);
}

TEST_CASE("frames agree") {
    const std::uint64_t n = 1'000'000;
    McOptions unit;
    McOptions standard;
    standard.frame = McFrame::scaled_standard;
    const EstimatorResult a = estimate(McMode::three_plus_centroid, 1, n, 5, unit);
    const EstimatorResult b = estimate(McMode::three_plus_centroid, 1, n, 6, standard);
    CHECK(std::abs(a.mean - b.mean) < 3 * std::hypot(a.standard_error, b.standard_error));
}

TEST_CASE("results do not depend on the thread count") {
    McOptions one;
    one.threads = 1;
    McOptions many;
    many.threads = 6;
    for (McMode mode : {McMode::all_random_four, McMode::three_plus_centroid}) {
        const EstimatorResult a = estimate(mode, 1, 300'001, 99, one);
        const EstimatorResult b = estimate(mode, 1, 300'001, 99, many);
        CHECK(a == b);
    }
    const EstimatorResult c = estimate(McMode::all_random_four, 1, 300'001, 100, many);
    CHECK(c.mean != estimate(McMode::all_random_four, 1, 300'001, 99, many).mean);
}

}
