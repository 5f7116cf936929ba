#include "tetracert/onesided.hpp"

#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace tetracert {

NodeSet::NodeSet(std::vector<Rational> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) {
        throw std::invalid_argument("NodeSet: at least one node required");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i] <= 0) {
            throw std::invalid_argument("NodeSet: node " + to_string(nodes_[i]) +
                                        " is not positive");
        }
        if (i > 0 && nodes_[i] <= nodes_[i - 1]) {
            throw std::invalid_argument("NodeSet: nodes must be strictly increasing (" +
                                        to_string(nodes_[i - 1]) + ", " + to_string(nodes_[i]) +
                                        ")");
        }
    }
}

bool NodeSet::all_at_most(const Rational& bound) const {
    return nodes_.back() <= bound;
}

NodeSet reference_nodes() {
    return NodeSet({make_rational(1, 83), make_rational(1, 22), make_rational(1, 11),
                    make_rational(2, 15), make_rational(2, 11), make_rational(5, 22),
                    make_rational(4, 15)});
}

EvenPoly::EvenPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

namespace {

// Interpolation sites in x; a site listed twice also matches the derivative.
std::vector<Rational> sites(const NodeSet& nodes, bool simple_last) {
    std::vector<Rational> xs;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        xs.push_back(nodes[j]);
        if (!(simple_last && j + 1 == nodes.size())) {
            xs.push_back(nodes[j]);
        }
    }
    return xs;
}

// Divided differences of sqrt on t = x^2 over the (possibly repeated) sites.
std::vector<Rational> divided_differences(const std::vector<Rational>& xs) {
    const std::size_t count = xs.size();
    std::vector<Rational> z(count), col(xs);
    for (std::size_t i = 0; i < count; ++i) {
        z[i] = xs[i] * xs[i];
    }
    std::vector<Rational> newton{col[0]};
    // First order: f'(t_j) = 1 / (2 x_j) on a repeated node.
    for (std::size_t i = 0; i + 1 < count; ++i) {
        if (z[i + 1] == z[i]) {
            col[i] = 1 / (2 * xs[i]);
        } else {
            col[i] = (col[i + 1] - col[i]) / (z[i + 1] - z[i]);
        }
    }
    if (count > 1) {
        newton.push_back(col[0]);
    }
    for (std::size_t order = 2; order < count; ++order) {
        for (std::size_t i = 0; i + order < count; ++i) {
            col[i] = (col[i + 1] - col[i]) / (z[i + order] - z[i]);
        }
        newton.push_back(col[0]);
    }
    return newton;
}

EvenPoly newton_to_monomial(const std::vector<Rational>& xs, const std::vector<Rational>& newton) {
    const std::size_t count = newton.size();
    // Nested Newton form Q(t) = c_0 + (t - z_0)(c_1 + (t - z_1)(...)).
    std::vector<Rational> q{newton.back()};
    for (std::size_t r = count - 1; r-- > 0;) {
        const Rational zr = xs[r] * xs[r];
        std::vector<Rational> next(q.size() + 1, Rational(0));
        for (std::size_t i = 0; i < q.size(); ++i) {
            next[i + 1] += q[i];
            next[i] -= zr * q[i];
        }
        next[0] += newton[r];
        q = std::move(next);
    }
    EvenPoly p(std::move(q));
    // The top divided difference of sqrt never vanishes.
    assert(p.half_degree() == count - 1);
    return p;
}

} // namespace

std::vector<Rational> hermite_divided_differences(const NodeSet& nodes) {
    return divided_differences(sites(nodes, false));
}

EvenPoly hermite_onesided(const NodeSet& nodes) {
    const std::vector<Rational> xs = sites(nodes, false);
    return newton_to_monomial(xs, divided_differences(xs));
}

EvenPoly endpoint_onesided(const NodeSet& nodes) {
    if (nodes[nodes.size() - 1] != make_rational(1, 3)) {
        throw std::invalid_argument("endpoint_onesided: the last node must be 1/3");
    }
    const std::vector<Rational> xs = sites(nodes, true);
    return newton_to_monomial(xs, divided_differences(xs));
}

Rational eval(const EvenPoly& p, const Rational& x) {
    const Rational t = x * x;
    Rational acc = 0;
    const auto& a = p.coefficients();
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

Rational eval_derivative(const EvenPoly& p, const Rational& x) {
    // dP/dx = 2x Q'(t), Q'(t) = sum_i i a_i t^{i-1}
    const Rational t = x * x;
    const auto& a = p.coefficients();
    Rational acc = 0;
    for (std::size_t i = a.size(); i-- > 1;) {
        acc = acc * t + a[i] * static_cast<unsigned long>(i);
    }
    return 2 * x * acc;
}

Rational expected_value(const EvenPoly& p, const MomentTable& moments) {
    const auto& a = p.coefficients();
    std::vector<unsigned> missing;
    for (unsigned i = 1; i < a.size(); ++i) {
        if (!moments.contains(i)) {
            missing.push_back(i);
        }
    }
    if (!missing.empty()) {
        std::string list;
        for (unsigned k : missing) {
            list += (list.empty() ? "" : ", ") + std::to_string(2 * k);
        }
        throw MissingMomentError("expected_value: missing moment orders " + list, missing);
    }
    Rational sum = a.empty() ? Rational(0) : a[0];
    for (unsigned i = 1; i < a.size(); ++i) {
        sum += a[i] * moments.at(i);
    }
    return sum;
}

NodeSet read_nodes(std::istream& in) {
    std::vector<Rational> nodes;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        nodes.push_back(parse_rational(line));
    }
    return NodeSet(std::move(nodes));
}

NodeSet read_nodes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read node file " + path.string());
    }
    return read_nodes(in);
}

void write_nodes(std::ostream& out, const NodeSet& nodes) {
    for (const auto& x : nodes.values()) {
        out << to_string(x) << '\n';
    }
}

void write_nodes(const std::filesystem::path& path, const NodeSet& nodes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write node file " + path.string());
    }
    write_nodes(out, nodes);
}

void write_even_poly(std::ostream& out, const EvenPoly& p) {
    out << "even-poly v1\n";
    const auto& a = p.coefficients();
    for (std::size_t i = 0; i < a.size(); ++i) {
        out << i << '\t' << a[i].get_num().get_str() << '\t' << a[i].get_den().get_str() << '\n';
    }
}

EvenPoly read_even_poly(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "even-poly v1") {
        throw std::runtime_error("even polynomial: bad header");
    }
    std::vector<Rational> coeffs;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::size_t i = 0;
        std::string num, den;
        if (!(fields >> i >> num >> den) || i != coeffs.size()) {
            throw std::runtime_error("even polynomial: bad line '" + line + "'");
        }
        coeffs.push_back(parse_rational(num + "/" + den));
    }
    return EvenPoly(std::move(coeffs));
}

} // namespace tetracert
