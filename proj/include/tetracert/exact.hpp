#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tetracert {

// GMP values are kept canonical: mpz has no leading zero limbs and mpq is
// always reduced with a positive denominator after every arithmetic op.
using BigInteger = mpz_class;
using Rational = mpq_class;

/// Builds a reduced rational from numerator and denominator.
/// Throws std::invalid_argument on a zero denominator.
Rational make_rational(const BigInteger& num, const BigInteger& den);
Rational make_rational(long num, long den);

/// Parses "p/q", "p" or "-p/q" (decimal digits only).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Truncated decimal expansion with `digits` digits after the point.
std::string to_decimal(const Rational& q, int digits);

bool is_reduced(const Rational& q);

/// n!, memoized. Thread-safe.
BigInteger factorial(unsigned n);

/// n! / prod(parts[i]!). Throws std::invalid_argument if sum(parts) != n.
BigInteger multinomial(unsigned n, std::span<const unsigned> parts);

BigInteger binomial(unsigned n, unsigned k);

BigInteger pow_int(long base, unsigned exp);

/// Rational 3^e for signed e.
Rational pow3(int e);

struct RationalInterval {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }

    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// Enclosure of pi^2 from the Machin formula pi = 16 atan(1/5) - 4 atan(1/239).
/// Both arctangent series alternate with decreasing terms, so consecutive
/// partial sums bracket the limit. Width is at most `max_width` (default 1e-15).
RationalInterval pi_squared_enclosure();
RationalInterval pi_squared_enclosure(const Rational& max_width);

/// Enclosure of 13/720 - pi^2/15015, the expected volume of a random simplex
/// in a unit-volume tetrahedron. lo uses the pi^2 upper bound.
RationalInterval target_enclosure();

} // namespace tetracert
