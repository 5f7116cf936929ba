#include "tetracert/exact.hpp"

#include <cctype>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace tetracert {

Rational make_rational(const BigInteger& num, const BigInteger& den) {
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(long num, long den) {
    return make_rational(BigInteger(num), BigInteger(den));
}

namespace {

BigInteger parse_integer(std::string_view text, std::string_view whole) {
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
        digits.remove_prefix(1);
    }
    if (digits.empty()) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        }
    }
    std::string owned(text.front() == '+' ? text.substr(1) : text);
    return BigInteger(owned, 10);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(t, text));
    }
    const BigInteger num = parse_integer(trim(t.substr(0, slash)), text);
    const BigInteger den = parse_integer(trim(t.substr(slash + 1)), text);
    return make_rational(num, den);
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational& q, int digits) {
    BigInteger num = abs(q.get_num());
    const BigInteger& den = q.get_den();
    BigInteger scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    BigInteger scaled = (num * scale) / den;
    std::string s = scaled.get_str();
    if (s.size() <= static_cast<std::size_t>(digits)) {
        s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    std::string out = s.substr(0, s.size() - digits);
    if (digits > 0) {
        out += "." + s.substr(s.size() - digits);
    }
    if (q < 0) {
        out.insert(0, "-");
    }
    return out;
}

bool is_reduced(const Rational& q) {
    BigInteger g;
    mpz_gcd(g.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q.get_den() > 0 && g == 1;
}

BigInteger factorial(unsigned n) {
    static std::mutex mutex;
    static std::vector<BigInteger> table{BigInteger(1)};
    std::lock_guard lock(mutex);
    while (table.size() <= n) {
        table.push_back(table.back() * static_cast<unsigned long>(table.size()));
    }
    return table[n];
}

BigInteger multinomial(unsigned n, std::span<const unsigned> parts) {
    unsigned long sum = 0;
    for (unsigned p : parts) {
        sum += p;
    }
    if (sum != n) {
        throw std::invalid_argument("multinomial: parts sum to " + std::to_string(sum) +
                                    ", expected " + std::to_string(n));
    }
    BigInteger result = factorial(n);
    for (unsigned p : parts) {
        if (p > 1) {
            result /= factorial(p);
        }
    }
    return result;
}

BigInteger binomial(unsigned n, unsigned k) {
    BigInteger r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

BigInteger pow_int(long base, unsigned exp) {
    BigInteger b(base);
    BigInteger r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

Rational pow3(int e) {
    const BigInteger p = pow_int(3, static_cast<unsigned>(e < 0 ? -e : e));
    return e < 0 ? Rational(BigInteger(1), p) : Rational(p);
}

namespace {

// Partial sums of atan(1/x) = sum_j (-1)^j / ((2j+1) x^(2j+1)), stopped once
// the next term is at most `tol`. Returns [lo, hi] bracketing atan(1/x).
RationalInterval atan_inverse(long x, const Rational& tol) {
    const BigInteger x2 = BigInteger(x) * x;
    BigInteger power = x; // x^(2j+1)
    Rational sum = 0;
    for (unsigned long j = 0;; ++j) {
        Rational term(BigInteger(1), power * (2 * j + 1));
        term.canonicalize();
        Rational next = (j % 2 == 0) ? Rational(sum + term) : Rational(sum - term);
        Rational next_term(BigInteger(1), power * x2 * (2 * j + 3));
        next_term.canonicalize();
        sum = next;
        if (next_term <= tol) {
            // sum and sum -/+ next_term bracket the limit.
            Rational other = (j % 2 == 0) ? Rational(sum - next_term) : Rational(sum + next_term);
            return sum < other ? RationalInterval{sum, other} : RationalInterval{other, sum};
        }
        power *= x2;
    }
}

} // namespace

RationalInterval pi_squared_enclosure(const Rational& max_width) {
    if (max_width <= 0) {
        throw std::invalid_argument("pi_squared_enclosure: width must be positive");
    }
    // pi < 4, so width(pi^2) <= 8 * width(pi); width(pi) <= 16 w5 + 4 w239.
    Rational tol = max_width / 400;
    for (;;) {
        const RationalInterval a5 = atan_inverse(5, tol);
        const RationalInterval a239 = atan_inverse(239, tol);
        const Rational pi_lo = 16 * a5.lo - 4 * a239.hi;
        const Rational pi_hi = 16 * a5.hi - 4 * a239.lo;
        RationalInterval out{pi_lo * pi_lo, pi_hi * pi_hi};
        if (out.width() <= max_width) {
            return out;
        }
        tol /= 16;
    }
}

RationalInterval pi_squared_enclosure() {
    return pi_squared_enclosure(make_rational(1, 1000000000000000L));
}

RationalInterval target_enclosure() {
    const RationalInterval pi2 = pi_squared_enclosure();
    const Rational base = make_rational(13, 720);
    return RationalInterval{base - pi2.hi / 15015, base - pi2.lo / 15015};
}

} // namespace tetracert
