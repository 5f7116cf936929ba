#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "tetracert/exact.hpp"
#include "tetracert/moments.hpp"

namespace tetracert {

// Strictly increasing positive rational nodes 0 < x_0 < ... < x_m.
class NodeSet {
public:
    NodeSet() = default;
    /// Throws std::invalid_argument on empty, non-positive or non-increasing input.
    explicit NodeSet(std::vector<Rational> nodes);

    const std::vector<Rational>& values() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    const Rational& operator[](std::size_t i) const { return nodes_[i]; }
    bool all_at_most(const Rational& bound) const;

    friend bool operator==(const NodeSet&, const NodeSet&) = default;

private:
    std::vector<Rational> nodes_;
};

/// The node set used for the published certificate.
NodeSet reference_nodes();

// P(x) = sum_i a_i x^{2i}.
class EvenPoly {
public:
    EvenPoly() = default;
    /// Trailing zero coefficients are stripped.
    explicit EvenPoly(std::vector<Rational> coeffs);

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    /// Number of even-power terms minus one (n); the degree in x is 2n.
    std::size_t half_degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    std::size_t degree() const { return 2 * half_degree(); }

    friend bool operator==(const EvenPoly&, const EvenPoly&) = default;

private:
    std::vector<Rational> coeffs_;
};

/// Newton-form coefficients of the Hermite interpolant of sqrt(t) on the
/// doubled nodes t_0, t_0, t_1, t_1, ... with t_j = x_j^2.
std::vector<Rational> hermite_divided_differences(const NodeSet& nodes);

/// The unique even P of degree 2(2m+1) with P(x_j) = x_j and P'(x_j) = 1.
/// P(x) >= |x| for every real x.
EvenPoly hermite_onesided(const NodeSet& nodes);

/// Even-degree variant for nodes ending at 1/3: P(x_j) = x_j and
/// P'(x_j) = 1 for j < m, only P(1/3) = 1/3 at the last node. Degree 4m in x;
/// P(x) >= |x| on [-1/3, 1/3]. Throws std::invalid_argument unless x_m = 1/3.
EvenPoly endpoint_onesided(const NodeSet& nodes);

Rational eval(const EvenPoly& p, const Rational& x);
Rational eval_derivative(const EvenPoly& p, const Rational& x);

class MissingMomentError : public std::runtime_error {
public:
    MissingMomentError(const std::string& what, std::vector<unsigned> orders)
        : std::runtime_error(what), orders_(std::move(orders)) {}
    /// Missing k values (moment orders 2k).
    const std::vector<unsigned>& orders() const { return orders_; }

private:
    std::vector<unsigned> orders_;
};

/// E P(V) = sum_i a_i mu_{2i}, with mu_0 = 1.
Rational expected_value(const EvenPoly& p, const MomentTable& moments);

/// One "p/q" per line; blank lines and lines starting with '#' are skipped.
NodeSet read_nodes(std::istream& in);
NodeSet read_nodes(const std::filesystem::path& path);
void write_nodes(std::ostream& out, const NodeSet& nodes);
void write_nodes(const std::filesystem::path& path, const NodeSet& nodes);

/// "even-poly v1" header, then "i<TAB>num<TAB>den" per coefficient of x^{2i}.
void write_even_poly(std::ostream& out, const EvenPoly& p);
EvenPoly read_even_poly(std::istream& in);

} // namespace tetracert
