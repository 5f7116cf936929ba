#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "tetracert/exact.hpp"
#include "tetracert/onesided.hpp"

namespace tetracert::testing {

// Small seeded generators for property tests. Every test constructs its own
// Gen so failures reproduce from the seed alone.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    unsigned uniform(unsigned lo, unsigned hi) {
        return std::uniform_int_distribution<unsigned>(lo, hi)(rng_);
    }

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

    Rational rational(long num_range, long max_den) {
        return make_rational(integer(-num_range, num_range), integer(1, max_den));
    }

    // Uniform-ish rational in (0, hi] with denominator at most max_den.
    Rational positive_at_most(const Rational& hi, long max_den) {
        const long den = integer(1, max_den);
        const Rational top = hi * den;
        const mpz_class limit = top.get_num() / top.get_den();
        const long num = integer(1, std::max(1L, limit.get_si()));
        Rational q = make_rational(num, den);
        return q > hi ? hi : q;
    }

    NodeSet nodes(unsigned count, const Rational& hi, long max_den) {
        std::set<Rational> picked;
        while (picked.size() < count) {
            picked.insert(positive_at_most(hi, max_den));
        }
        return NodeSet(std::vector<Rational>(picked.begin(), picked.end()));
    }

    std::array<Rational, 9> point9(long num_range, long max_den) {
        std::array<Rational, 9> p;
        for (auto& v : p) {
            v = rational(num_range, max_den);
        }
        return p;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace tetracert::testing
