#pragma once

#include <utility>
#include <vector>

#include "tetracert/exact.hpp"

namespace tetracert {

// Dense univariate polynomial sum_i c_i x^i with exact rational coefficients.
// The zero polynomial has no coefficients.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs);

    static RationalPoly monomial(const Rational& c, std::size_t power);

    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Rational& leading() const { return c_.back(); }
    Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    Rational operator()(const Rational& x) const;
    RationalPoly derivative() const;

    friend RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
    friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
    friend bool operator==(const RationalPoly&, const RationalPoly&) = default;

private:
    void normalize();
    std::vector<Rational> c_;
};

/// Quotient and remainder with deg(remainder) < deg(divisor).
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);

/// p_0 = p, p_1 = p', p_{i+1} = -rem(p_{i-1}, p_i).
std::vector<RationalPoly> sturm_sequence(const RationalPoly& p);

/// Sign changes of the sequence evaluated at x (zeros skipped).
int sign_variations(const std::vector<RationalPoly>& seq, const Rational& x);

/// Distinct real roots of p in the closed interval [a, b].
int count_roots(const RationalPoly& p, const Rational& a, const Rational& b);

} // namespace tetracert
