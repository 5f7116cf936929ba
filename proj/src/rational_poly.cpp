#include "tetracert/rational_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace tetracert {

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    normalize();
}

RationalPoly RationalPoly::monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = c;
    return RationalPoly(std::move(v));
}

void RationalPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) {
        c_.pop_back();
    }
}

Rational RationalPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

RationalPoly RationalPoly::derivative() const {
    if (c_.size() <= 1) {
        return {};
    }
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    }
    return RationalPoly(std::move(d));
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        r[i] += a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        r[i] += b.c_[i];
    }
    return RationalPoly(std::move(r));
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        r[i] += a.c_[i];
    }
    for (std::size_t i = 0; i < b.c_.size(); ++i) {
        r[i] -= b.c_[i];
    }
    return RationalPoly(std::move(r));
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            r[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return RationalPoly(std::move(r));
}

std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b) {
    if (b.is_zero()) {
        throw std::domain_error("polynomial division by zero");
    }
    if (a.degree() < b.degree()) {
        return {RationalPoly{}, a};
    }
    std::vector<Rational> rem = a.coefficients();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<Rational> quot(rem.size() - db, Rational(0));
    for (std::size_t i = quot.size(); i-- > 0;) {
        const Rational q = rem[i + db] / b.leading();
        quot[i] = q;
        if (q == 0) {
            continue;
        }
        for (std::size_t j = 0; j <= db; ++j) {
            rem[i + j] -= q * b.coefficients()[j];
        }
    }
    rem.resize(db);
    return {RationalPoly(std::move(quot)), RationalPoly(std::move(rem))};
}

std::vector<RationalPoly> sturm_sequence(const RationalPoly& p) {
    std::vector<RationalPoly> seq;
    if (p.is_zero()) {
        return seq;
    }
    seq.push_back(p);
    RationalPoly d = p.derivative();
    while (!d.is_zero()) {
        seq.push_back(d);
        const auto& prev = seq[seq.size() - 2];
        RationalPoly r = divmod(prev, d).second;
        d = RationalPoly{} - r;
    }
    return seq;
}

int sign_variations(const std::vector<RationalPoly>& seq, const Rational& x) {
    int changes = 0;
    int last = 0;
    for (const auto& p : seq) {
        const int s = sgn(p(x));
        if (s == 0) {
            continue;
        }
        if (last != 0 && s != last) {
            ++changes;
        }
        last = s;
    }
    return changes;
}

namespace {

// Removes every factor (x - r) from p.
RationalPoly strip_root(RationalPoly p, const Rational& r) {
    const RationalPoly linear(std::vector<Rational>{-r, Rational(1)});
    while (!p.is_zero() && p(r) == 0) {
        p = divmod(p, linear).first;
    }
    return p;
}

} // namespace

int count_roots(const RationalPoly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) {
        throw std::domain_error("count_roots: zero polynomial has infinitely many roots");
    }
    if (b < a) {
        return 0;
    }
    int endpoint_roots = 0;
    RationalPoly q = p;
    if (q(a) == 0) {
        ++endpoint_roots;
        q = strip_root(q, a);
    }
    if (b != a && q(b) == 0) {
        ++endpoint_roots;
        q = strip_root(q, b);
    }
    if (b == a) {
        return endpoint_roots;
    }
    // Neither endpoint is a root of q now: roots in (a, b) = V(a) - V(b).
    const auto seq = sturm_sequence(q);
    return endpoint_roots + sign_variations(seq, a) - sign_variations(seq, b);
}

} // namespace tetracert
