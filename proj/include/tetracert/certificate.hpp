#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tetracert/exact.hpp"
#include "tetracert/moments.hpp"
#include "tetracert/onesided.hpp"
#include "tetracert/rational_poly.hpp"

namespace tetracert {

inline constexpr const char* kToolVersion = "0.1.0";

// hermite: every node is a double root of P(x) - x (odd half-degree 2m+1).
// endpoint: the last node is 1/3 and only a simple root (half-degree 2m).
enum class Construction { hermite, endpoint };
std::string to_string(Construction c);
Construction parse_construction(const std::string& s);

// Machine check of P(x) >= x on [0, 1/3]:
// P(x) - x = prod_j (x - x_j)^2 * R(x) with R free of roots on [0, 1/3]
// and positive there. For the endpoint construction the factor for 1/3 is
// (x - 1/3) and R must be negative instead.
struct DominanceProof {
    std::vector<Rational> quotient;  // R, ascending powers of x
    bool remainder_zero = false;
    int roots_in_interval = -1;      // distinct roots of R on [0, 1/3] (Sturm)
    Rational r_at_zero;
    Rational r_at_upper;             // R(1/3)
    bool valid = false;
    std::string diagnostic;

    friend bool operator==(const DominanceProof&, const DominanceProof&) = default;
};

/// P(x) - x as a dense polynomial in x.
RationalPoly dominance_gap(const EvenPoly& p);

/// Deflates P(x) - x by prod (x - x_j)^2 and counts roots of the quotient on
/// [0, 1/3] with a Sturm sequence. Never throws on a failed check; `valid`
/// and `diagnostic` carry the outcome.
DominanceProof verify_dominance(const EvenPoly& p, const NodeSet& nodes,
                                Construction construction = Construction::hermite);

struct Certificate {
    NodeSet nodes;
    Construction construction = Construction::hermite;
    EvenPoly p_cert;
    Rational bound;            // E P_cert(V)
    RationalInterval target;   // encloses 13/720 - pi^2/15015
    DominanceProof dominance;
    bool verdict = false;
    std::map<std::string, std::string> metadata;

    Rational margin() const { return target.lo - bound; }

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// P_cert from the nodes, B = E P_cert(V), and the verdict
/// dominance.valid && B < target.lo. Throws MissingMomentError if the table
/// lacks any order 2..2(2m+1).
Certificate certify(const NodeSet& nodes, const MomentTable& moments,
                    Construction construction = Construction::hermite);

inline constexpr const char* kVerdictCertified = "COUNTEREXAMPLE CERTIFIED";
inline constexpr const char* kVerdictNotCertified = "NOT CERTIFIED";

/// Line-oriented "key: value" report with exact fractions.
std::string render_report(const Certificate& c);
void render_report(std::ostream& out, const Certificate& c);

/// Inverse of render_report for the exact fields.
Certificate parse_report(std::istream& in);
Certificate parse_report(const std::string& text);

} // namespace tetracert
