#include "tetracert/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tetracert/moments.hpp"

namespace tetracert {

Tetrahedron standard_tetrahedron() {
    return {Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{0, 1, 0}, Point3{0, 0, 1}};
}

Tetrahedron unit_volume_tetrahedron() {
    const double s = std::cbrt(6.0);
    return {Point3{0, 0, 0}, Point3{s, 0, 0}, Point3{0, s, 0}, Point3{0, 0, s}};
}

double tetra_volume(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4) {
    const double ax = p1.x - p4.x, ay = p1.y - p4.y, az = p1.z - p4.z;
    const double bx = p2.x - p4.x, by = p2.y - p4.y, bz = p2.z - p4.z;
    const double cx = p3.x - p4.x, cy = p3.y - p4.y, cz = p3.z - p4.z;
    const double det = ax * (by * cz - bz * cy) - ay * (bx * cz - bz * cx) + az * (bx * cy - by * cx);
    return std::abs(det) / 6.0;
}

Point3 sample_uniform_tetrahedron(std::mt19937_64& rng, const Tetrahedron& t) {
    if (!(tetra_volume(t[0], t[1], t[2], t[3]) > 0.0)) {
        throw std::invalid_argument("sample_uniform_tetrahedron: degenerate tetrahedron");
    }
    std::exponential_distribution<double> exp1(1.0);
    double w[4];
    double sum = 0.0;
    for (double& wi : w) {
        wi = exp1(rng);
        sum += wi;
    }
    Point3 p;
    for (int i = 0; i < 4; ++i) {
        const double b = w[i] / sum;
        p.x += b * t[i].x;
        p.y += b * t[i].y;
        p.z += b * t[i].z;
    }
    return p;
}

McMode parse_mc_mode(const std::string& s) {
    if (s == "four") {
        return McMode::all_random_four;
    }
    if (s == "centroid") {
        return McMode::three_plus_centroid;
    }
    throw std::invalid_argument("unknown Monte Carlo mode '" + s + "' (expected four|centroid)");
}

std::string to_string(McMode m) {
    return m == McMode::all_random_four ? "four" : "centroid";
}

namespace {

constexpr std::uint64_t kChunk = 1u << 16;

struct Moments2 {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;
};

Moments2 merge(const Moments2& a, const Moments2& b) {
    if (a.count == 0.0) {
        return b;
    }
    if (b.count == 0.0) {
        return a;
    }
    Moments2 r;
    r.count = a.count + b.count;
    const double delta = b.mean - a.mean;
    r.mean = a.mean + delta * b.count / r.count;
    r.m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / r.count;
    return r;
}

// Pairwise reduction in index order.
Moments2 reduce(std::span<const Moments2> parts) {
    if (parts.empty()) {
        return {};
    }
    if (parts.size() == 1) {
        return parts[0];
    }
    const std::size_t half = parts.size() / 2;
    return merge(reduce(parts.first(half)), reduce(parts.subspan(half)));
}

} // namespace

EstimatorResult estimate(McMode mode, unsigned power, std::uint64_t samples, std::uint64_t seed,
                         const McOptions& opts) {
    if (samples < 1000) {
        throw std::invalid_argument("estimate: at least 1000 samples required");
    }
    if (power == 0) {
        throw std::invalid_argument("estimate: power must be positive");
    }
    const bool unit = opts.frame == McFrame::unit_volume;
    const Tetrahedron body = unit ? unit_volume_tetrahedron() : standard_tetrahedron();
    const double scale = unit ? std::cbrt(6.0) : 1.0;
    const double volume_factor = unit ? 1.0 : 6.0;
    const Point3 centroid{scale / 3.0, scale / 3.0, 0.0};

    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<Moments2> parts(chunks);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
            std::mt19937_64 rng(seq);
            const std::uint64_t begin = c * kChunk;
            const std::uint64_t end = std::min(samples, begin + kChunk);
            Moments2 acc;
            for (std::uint64_t i = begin; i < end; ++i) {
                const Point3 p1 = sample_uniform_tetrahedron(rng, body);
                const Point3 p2 = sample_uniform_tetrahedron(rng, body);
                const Point3 p3 = sample_uniform_tetrahedron(rng, body);
                // Always drawn so both modes share X1..X3 for a given seed.
                const Point3 p4 = sample_uniform_tetrahedron(rng, body);
                const Point3& last = mode == McMode::all_random_four ? p4 : centroid;
                const double v = volume_factor * tetra_volume(p1, p2, p3, last);
                const double value = std::pow(v, static_cast<double>(power));
                acc.count += 1.0;
                const double delta = value - acc.mean;
                acc.mean += delta / acc.count;
                acc.m2 += delta * (value - acc.mean);
            }
            parts[c] = acc;
        }
    };

    const unsigned threads = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_threads(opts.threads), chunks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    const Moments2 total = reduce(parts);
    EstimatorResult r;
    r.samples = samples;
    r.seed = seed;
    r.mean = total.mean;
    r.standard_error = std::sqrt(total.m2 / (total.count - 1.0)) / std::sqrt(total.count);
    return r;
}

} // namespace tetracert
