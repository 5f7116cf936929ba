#include "tetracert/certificate.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tetracert {

std::string to_string(Construction c) {
    return c == Construction::hermite ? "hermite" : "endpoint";
}

Construction parse_construction(const std::string& s) {
    if (s == "hermite") {
        return Construction::hermite;
    }
    if (s == "endpoint") {
        return Construction::endpoint;
    }
    throw std::invalid_argument("unknown construction '" + s + "' (expected hermite|endpoint)");
}

RationalPoly dominance_gap(const EvenPoly& p) {
    const auto& a = p.coefficients();
    std::vector<Rational> c(std::max<std::size_t>(2 * a.size(), 2), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        c[2 * i] = a[i];
    }
    c[1] -= 1;
    return RationalPoly(std::move(c));
}

DominanceProof verify_dominance(const EvenPoly& p, const NodeSet& nodes, Construction construction) {
    DominanceProof proof;
    const Rational upper = make_rational(1, 3);
    const bool endpoint = construction == Construction::endpoint;
    if (endpoint && (nodes.size() == 0 || nodes[nodes.size() - 1] != upper)) {
        proof.diagnostic = "endpoint construction needs 1/3 as the last node";
        return proof;
    }

    RationalPoly divisor(std::vector<Rational>{Rational(1)});
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const RationalPoly linear(std::vector<Rational>{-nodes[j], Rational(1)});
        divisor = divisor * linear;
        if (!(endpoint && j + 1 == nodes.size())) {
            divisor = divisor * linear;
        }
    }
    auto [quotient, remainder] = divmod(dominance_gap(p), divisor);
    proof.quotient = quotient.coefficients();
    proof.remainder_zero = remainder.is_zero();
    if (!proof.remainder_zero) {
        proof.diagnostic = "P(x) - x is not divisible by the node factors (remainder degree " +
                           std::to_string(remainder.degree()) + ")";
        return proof;
    }
    if (quotient.is_zero()) {
        proof.diagnostic = "deflation quotient is zero";
        return proof;
    }
    proof.r_at_zero = quotient(Rational(0));
    proof.r_at_upper = quotient(upper);
    proof.roots_in_interval = count_roots(quotient, Rational(0), upper);
    if (proof.roots_in_interval != 0) {
        proof.diagnostic = "quotient has " + std::to_string(proof.roots_in_interval) +
                           " root(s) in [0, 1/3]";
        return proof;
    }
    // (x - 1/3) <= 0 on the interval, so the endpoint quotient must be negative.
    if (endpoint ? proof.r_at_zero >= 0 : proof.r_at_zero <= 0) {
        proof.diagnostic = endpoint ? "quotient is not negative at 0" : "quotient is not positive at 0";
        return proof;
    }
    proof.valid = true;
    proof.diagnostic = "ok";
    return proof;
}

Certificate certify(const NodeSet& nodes, const MomentTable& moments, Construction construction) {
    Certificate c;
    c.nodes = nodes;
    c.construction = construction;
    c.p_cert = construction == Construction::hermite ? hermite_onesided(nodes) : endpoint_onesided(nodes);
    c.bound = expected_value(c.p_cert, moments); // throws on missing orders
    c.target = target_enclosure();
    c.dominance = verify_dominance(c.p_cert, nodes, construction);
    c.verdict = c.dominance.valid && c.bound < c.target.lo;

    std::string prov;
    for (unsigned k = 1; k <= c.p_cert.half_degree(); ++k) {
        prov += (prov.empty() ? "" : " ") + std::to_string(2 * k) + ":" +
                to_string(moments.provenance(k));
    }
    c.metadata["tool-version"] = kToolVersion;
    c.metadata["moment-provenance"] = prov;
    return c;
}

namespace {

constexpr const char* kReportHeader = "tetracert certificate v1";
constexpr int kDecimalDigits = 20;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

} // namespace

void render_report(std::ostream& out, const Certificate& c) {
    out << kReportHeader << '\n';
    for (const auto& [key, value] : c.metadata) {
        out << "meta " << key << ": " << value << '\n';
    }
    out << "construction: " << to_string(c.construction) << '\n';
    out << "nodes: " << c.nodes.size() << '\n';
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        out << "node " << i << ": " << to_string(c.nodes[i]) << '\n';
    }
    const auto& a = c.p_cert.coefficients();
    out << "degree: " << c.p_cert.degree() << '\n';
    for (std::size_t i = 0; i < a.size(); ++i) {
        out << "a " << i << ": " << to_string(a[i]) << '\n';
    }
    out << "bound: " << to_string(c.bound) << '\n';
    out << "bound-decimal: " << to_decimal(c.bound, kDecimalDigits) << '\n';
    out << "target-lo: " << to_string(c.target.lo) << '\n';
    out << "target-hi: " << to_string(c.target.hi) << '\n';
    out << "target-decimal: [" << to_decimal(c.target.lo, kDecimalDigits) << ", "
        << to_decimal(c.target.hi, kDecimalDigits) << "]\n";
    out << "margin: " << to_string(c.margin()) << '\n';
    out << "margin-decimal: " << to_decimal(c.margin(), kDecimalDigits) << '\n';

    const DominanceProof& d = c.dominance;
    out << "dominance-remainder-zero: " << yes_no(d.remainder_zero) << '\n';
    out << "dominance-quotient-degree: " << static_cast<long>(d.quotient.size()) - 1 << '\n';
    for (std::size_t i = 0; i < d.quotient.size(); ++i) {
        out << "r " << i << ": " << to_string(d.quotient[i]) << '\n';
    }
    out << "dominance-sturm-roots: " << d.roots_in_interval << '\n';
    out << "dominance-r-at-0: " << to_string(d.r_at_zero) << '\n';
    out << "dominance-r-at-upper: " << to_string(d.r_at_upper) << '\n';
    out << "dominance-valid: " << yes_no(d.valid) << '\n';
    out << "dominance-diagnostic: " << d.diagnostic << '\n';

    out << "verdict: " << (c.verdict ? kVerdictCertified : kVerdictNotCertified) << '\n';
    if (!c.verdict) {
        const Rational deficit = c.bound - c.target.lo;
        out << "margin-deficit: " << to_string(deficit) << '\n';
        out << "margin-deficit-decimal: " << to_decimal(deficit, kDecimalDigits) << '\n';
    }
    out << "note: the bound is E|conv(X1,X2,X3,c)| <= E P_cert(V) = bound < 13/720 - pi^2/15015 "
           "= E|conv(X1,...,X4)| for a unit-volume tetrahedron and c a facet centroid; "
           "non-monotonicity in dimension three follows from Rademacher's equivalence lemma "
           "(monotonicity under inclusion holds iff boundary points never increase the "
           "expected simplex volume), which is cited here, not mechanized.\n";
}

std::string render_report(const Certificate& c) {
    std::ostringstream out;
    render_report(out, c);
    return out.str();
}

namespace {

bool parse_yes_no(const std::string& v) {
    if (v == "yes") {
        return true;
    }
    if (v == "no") {
        return false;
    }
    throw std::runtime_error("report: expected yes/no, got '" + v + "'");
}

std::size_t parse_index(const std::string& key, std::size_t prefix) {
    return static_cast<std::size_t>(std::stoul(key.substr(prefix)));
}

} // namespace

Certificate parse_report(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kReportHeader) {
        throw std::runtime_error("report: bad header");
    }
    Certificate c;
    std::vector<Rational> nodes, coeffs;
    bool have_verdict = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto sep = line.find(": ");
        if (sep == std::string::npos) {
            throw std::runtime_error("report: malformed line '" + line + "'");
        }
        const std::string key = line.substr(0, sep);
        const std::string value = line.substr(sep + 2);
        if (key.rfind("meta ", 0) == 0) {
            c.metadata[key.substr(5)] = value;
        } else if (key.rfind("node ", 0) == 0) {
            if (parse_index(key, 5) != nodes.size()) {
                throw std::runtime_error("report: nodes out of order");
            }
            nodes.push_back(parse_rational(value));
        } else if (key.rfind("a ", 0) == 0) {
            if (parse_index(key, 2) != coeffs.size()) {
                throw std::runtime_error("report: coefficients out of order");
            }
            coeffs.push_back(parse_rational(value));
        } else if (key.rfind("r ", 0) == 0) {
            if (parse_index(key, 2) != c.dominance.quotient.size()) {
                throw std::runtime_error("report: quotient out of order");
            }
            c.dominance.quotient.push_back(parse_rational(value));
        } else if (key == "construction") {
            c.construction = parse_construction(value);
        } else if (key == "bound") {
            c.bound = parse_rational(value);
        } else if (key == "target-lo") {
            c.target.lo = parse_rational(value);
        } else if (key == "target-hi") {
            c.target.hi = parse_rational(value);
        } else if (key == "dominance-remainder-zero") {
            c.dominance.remainder_zero = parse_yes_no(value);
        } else if (key == "dominance-sturm-roots") {
            c.dominance.roots_in_interval = std::stoi(value);
        } else if (key == "dominance-r-at-0") {
            c.dominance.r_at_zero = parse_rational(value);
        } else if (key == "dominance-r-at-upper") {
            c.dominance.r_at_upper = parse_rational(value);
        } else if (key == "dominance-valid") {
            c.dominance.valid = parse_yes_no(value);
        } else if (key == "dominance-diagnostic") {
            c.dominance.diagnostic = value;
        } else if (key == "verdict") {
            if (value != kVerdictCertified && value != kVerdictNotCertified) {
                throw std::runtime_error("report: unknown verdict '" + value + "'");
            }
            c.verdict = value == kVerdictCertified;
            have_verdict = true;
        }
        // Derived fields (decimals, margin, degree, note) are not parsed back.
    }
    if (!have_verdict) {
        throw std::runtime_error("report: missing verdict");
    }
    c.nodes = NodeSet(std::move(nodes));
    c.p_cert = EvenPoly(std::move(coeffs));
    return c;
}

Certificate parse_report(const std::string& text) {
    std::istringstream in(text);
    return parse_report(in);
}

} // namespace tetracert
