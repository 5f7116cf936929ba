#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>

namespace tetracert {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

using Tetrahedron = std::array<Point3, 4>;

/// Vertices of T_o = conv{0, e1, e2, e3}.
Tetrahedron standard_tetrahedron();
/// cbrt(6) * T_o, the unit-volume representative.
Tetrahedron unit_volume_tetrahedron();

/// |det [p_i - p_4]| / 6.
double tetra_volume(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4);

/// Uniform point via Dirichlet(1,1,1,1) barycentric weights from four
/// unit-exponential draws. Throws std::invalid_argument for a degenerate
/// tetrahedron.
Point3 sample_uniform_tetrahedron(std::mt19937_64& rng, const Tetrahedron& t);

enum class McMode { all_random_four, three_plus_centroid };
McMode parse_mc_mode(const std::string& s);  // "four" | "centroid"
std::string to_string(McMode m);

enum class McFrame {
    unit_volume,      // sample in cbrt(6) T_o
    scaled_standard,  // sample in T_o, multiply volumes by 6
};

struct EstimatorResult {
    double mean = 0.0;
    double standard_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const EstimatorResult&, const EstimatorResult&) = default;
};

struct McOptions {
    unsigned threads = 0;
    McFrame frame = McFrame::unit_volume;
};

/// Mean of V^power over independent configurations. Sample i draws from a
/// substream keyed by (seed, i / chunk), so the result does not depend on
/// the thread count. Throws std::invalid_argument for samples < 1000.
EstimatorResult estimate(McMode mode, unsigned power, std::uint64_t samples, std::uint64_t seed,
                         const McOptions& opts = {});

} // namespace tetracert
