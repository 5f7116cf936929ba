#pragma once

#include <array>

#include "tetracert/exact.hpp"

namespace tetracert {

// Exponents (l, m, n) of x, y, z for one point.
struct Exponent3 {
    unsigned l = 0;
    unsigned m = 0;
    unsigned n = 0;

    unsigned degree() const { return l + m + n; }
    friend bool operator==(const Exponent3&, const Exponent3&) = default;
};

class Monomial9;

/// Integral of x^l y^m z^n over T_o = {x, y, z >= 0, x + y + z <= 1}:
/// l! m! n! / (l + m + n + 3)!. Memoized on the sorted exponent triple.
Rational monomial_integral(const Exponent3& e);

/// Product of the three per-point monomial integrals (integral over T_o^3).
Rational triple_integral(const Monomial9& m);

} // namespace tetracert
