#include "tetracert/moments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace tetracert {

// ---------------------------------------------------------------- Monomial9

Monomial9::Monomial9(const std::array<unsigned, 9>& exps) {
    for (unsigned i = 0; i < 9; ++i) {
        if (exps[i] > kMaxExponent) {
            throw std::overflow_error("Monomial9: exponent exceeds packed width");
        }
        packed_ |= static_cast<std::uint64_t>(exps[i]) << (kBits * i);
    }
}

std::array<unsigned, 9> Monomial9::exponents() const {
    std::array<unsigned, 9> out{};
    for (unsigned i = 0; i < 9; ++i) {
        out[i] = exponent(i);
    }
    return out;
}

unsigned Monomial9::degree() const {
    unsigned d = 0;
    for (unsigned i = 0; i < 9; ++i) {
        d += exponent(i);
    }
    return d;
}

Monomial9 Monomial9::operator*(const Monomial9& other) const {
    std::array<unsigned, 9> e{};
    for (unsigned i = 0; i < 9; ++i) {
        e[i] = exponent(i) + other.exponent(i);
    }
    return Monomial9(e);
}

// --------------------------------------------------------------- SparsePoly

SparsePoly SparsePoly::one() {
    SparsePoly p;
    p.add_term(Monomial9{}, BigInteger(1));
    return p;
}

void SparsePoly::add_term(const Monomial9& m, const BigInteger& coeff) {
    if (coeff == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

BigInteger SparsePoly::coefficient(const Monomial9& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? BigInteger(0) : it->second;
}

std::vector<std::pair<Monomial9, BigInteger>> SparsePoly::sorted_terms() const {
    std::vector<std::pair<Monomial9, BigInteger>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Rational SparsePoly::evaluate(const std::array<Rational, 9>& point) const {
    Rational sum = 0;
    for (const auto& [m, c] : sorted_terms()) {
        Rational term(c);
        for (unsigned i = 0; i < 9; ++i) {
            for (unsigned e = m.exponent(i); e > 0; --e) {
                term *= point[i];
            }
        }
        sum += term;
    }
    return sum * pow3(scale_pow3_);
}

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out;
    out.set_scale_pow3(a.scale_pow3() + b.scale_pow3());
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    const auto small_terms = small.sorted_terms();
    const auto large_terms = large.sorted_terms();
    BigInteger prod;
    for (const auto& [ma, ca] : small_terms) {
        for (const auto& [mb, cb] : large_terms) {
            prod = ca * cb;
            out.add_term(ma * mb, prod);
        }
    }
    return out;
}

namespace {

// Coordinate index of (point p in 1..3, axis 'x'|'y'|'z').
constexpr unsigned coord(unsigned p, char axis) {
    return 3 * (p - 1) + (axis == 'x' ? 0 : axis == 'y' ? 1 : 2);
}

struct DTerm {
    int coeff;
    std::array<unsigned, 3> vars; // coordinate indices; unused slots hold 9
};

// The 18 terms of 3D in the order of the multiplicities k_1..k_18.
constexpr std::array<DTerm, 18> kDTerms{{
    {+1, {coord(1, 'x'), coord(2, 'z'), 9}},
    {-1, {coord(1, 'x'), coord(3, 'z'), 9}},
    {-1, {coord(2, 'x'), coord(1, 'z'), 9}},
    {+1, {coord(2, 'x'), coord(3, 'z'), 9}},
    {+1, {coord(3, 'x'), coord(1, 'z'), 9}},
    {-1, {coord(3, 'x'), coord(2, 'z'), 9}},
    {-1, {coord(1, 'y'), coord(2, 'z'), 9}},
    {+1, {coord(1, 'y'), coord(3, 'z'), 9}},
    {+1, {coord(2, 'y'), coord(1, 'z'), 9}},
    {-1, {coord(2, 'y'), coord(3, 'z'), 9}},
    {-1, {coord(3, 'y'), coord(1, 'z'), 9}},
    {+1, {coord(3, 'y'), coord(2, 'z'), 9}},
    {+3, {coord(1, 'x'), coord(2, 'y'), coord(3, 'z')}},
    {-3, {coord(1, 'x'), coord(3, 'y'), coord(2, 'z')}},
    {-3, {coord(2, 'x'), coord(1, 'y'), coord(3, 'z')}},
    {+3, {coord(2, 'x'), coord(3, 'y'), coord(1, 'z')}},
    {+3, {coord(3, 'x'), coord(1, 'y'), coord(2, 'z')}},
    {-3, {coord(3, 'x'), coord(2, 'y'), coord(1, 'z')}},
}};

} // namespace

SparsePoly build_D() {
    SparsePoly d;
    for (const DTerm& t : kDTerms) {
        std::array<unsigned, 9> e{};
        for (unsigned v : t.vars) {
            if (v < 9) {
                ++e[v];
            }
        }
        d.add_term(Monomial9(e), BigInteger(t.coeff));
    }
    d.set_scale_pow3(-1);
    return d;
}

Rational determinant_D(const std::array<Rational, 9>& p) {
    // det [X_i - c] over rows i = 1..3 equals the bordered 4x4 determinant.
    const Rational third = make_rational(1, 3);
    std::array<std::array<Rational, 3>, 3> y;
    for (unsigned i = 0; i < 3; ++i) {
        y[i] = {p[3 * i] - third, p[3 * i + 1] - third, p[3 * i + 2]};
    }
    return y[0][0] * (y[1][1] * y[2][2] - y[1][2] * y[2][1]) -
           y[0][1] * (y[1][0] * y[2][2] - y[1][2] * y[2][0]) +
           y[0][2] * (y[1][0] * y[2][1] - y[1][1] * y[2][0]);
}

// ------------------------------------------------------------ compositions

Abbreviations abbreviations(std::span<const unsigned> c) {
    if (c.size() != 18) {
        throw std::invalid_argument("abbreviations: expected 18 multiplicities");
    }
    auto k = [&](unsigned i) { return c[i - 1]; };
    Abbreviations a;
    a.k_prime = k(2) + k(3) + k(6) + k(7) + k(10) + k(11) + k(14) + k(15) + k(18);
    a.k_dprime = k(13) + k(14) + k(15) + k(16) + k(17) + k(18);
    a.points[0] = {k(1) + k(2) + k(13) + k(14), k(7) + k(8) + k(15) + k(17),
                   k(3) + k(5) + k(9) + k(11) + k(16) + k(18)};
    a.points[1] = {k(3) + k(4) + k(15) + k(16), k(9) + k(10) + k(13) + k(18),
                   k(1) + k(6) + k(7) + k(12) + k(14) + k(17)};
    a.points[2] = {k(5) + k(6) + k(17) + k(18), k(11) + k(12) + k(14) + k(16),
                   k(2) + k(4) + k(8) + k(10) + k(13) + k(15)};
    return a;
}

CompositionStream::CompositionStream(unsigned total, unsigned parts) : current_(parts, 0) {
    if (parts == 0) {
        throw std::invalid_argument("CompositionStream: parts must be positive");
    }
    current_.back() = total;
}

bool CompositionStream::next() {
    const std::size_t p = current_.size();
    // Rightmost j < p-1 with a nonzero tail after it.
    unsigned tail = 0;
    std::size_t j = p - 1;
    while (j > 0) {
        tail += current_[j];
        --j;
        if (tail > 0) {
            ++current_[j];
            std::fill(current_.begin() + static_cast<std::ptrdiff_t>(j) + 1, current_.end(), 0u);
            current_.back() = tail - 1;
            return true;
        }
    }
    return false;
}

std::vector<CompositionVector> enumerate_compositions(unsigned total, unsigned parts) {
    std::vector<CompositionVector> out;
    CompositionStream s(total, parts);
    do {
        out.push_back(s.current());
    } while (s.next());
    return out;
}

BigInteger count_compositions(unsigned total, unsigned parts) {
    return binomial(total + parts - 1, parts - 1);
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("TETRACERT_THREADS")) {
        unsigned v = 0;
        const char* end = env + std::char_traits<char>::length(env);
        if (std::from_chars(env, end, v).ec == std::errc{} && v > 0) {
            return v;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Runs body(task) for task in [0, count) over `threads` workers; each worker
// owns accumulator slot `w`. Accumulators are combined in slot order.
template <class Body>
BigInteger parallel_sum(unsigned count, unsigned threads, Body body) {
    threads = std::max(1u, std::min(threads, count));
    std::vector<BigInteger> acc(threads, BigInteger(0));
    std::atomic<unsigned> next{0};
    auto worker = [&](unsigned w) {
        for (unsigned task = next++; task < count; task = next++) {
            body(task, acc[w]);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back(worker, w);
        }
    }
    BigInteger total = 0;
    for (const auto& a : acc) {
        total += a;
    }
    return total;
}

} // namespace

// ------------------------------------------------------------- direct path

Rational even_moment_direct(unsigned k, const MomentOptions& opts) {
    if (k == 0) {
        return Rational(1);
    }
    const unsigned n = 2 * k;
    if (k > opts.direct_cap) {
        throw MomentCapError("even_moment_direct: k = " + std::to_string(k) + " exceeds cap " +
                             std::to_string(opts.direct_cap) + " (" +
                             count_compositions(n, 18).get_str() + " compositions)");
    }

    std::vector<BigInteger> fact(n + 4);
    for (unsigned i = 0; i < fact.size(); ++i) {
        fact[i] = factorial(i);
    }
    // weight[l][m][p] = l! m! p! (n+3)! / (l+m+p+3)!, an integer for l+m+p <= n.
    const unsigned side = n + 1;
    std::vector<BigInteger> weight(side * side * side);
    for (unsigned l = 0; l <= n; ++l) {
        for (unsigned m = 0; l + m <= n; ++m) {
            for (unsigned p = 0; l + m + p <= n; ++p) {
                weight[(l * side + m) * side + p] =
                    fact[l] * fact[m] * fact[p] * (fact[n + 3] / fact[l + m + p + 3]);
            }
        }
    }
    auto w = [&](const Exponent3& e) -> const BigInteger& {
        return weight[(e.l * side + e.m) * side + e.n];
    };
    std::vector<BigInteger> pow3s(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        pow3s[i] = pow_int(3, i);
    }

    // Leading multiplicity k_1 partitions the stream.
    const BigInteger sum = parallel_sum(n + 1, resolve_threads(opts.threads),
                                        [&](unsigned lead, BigInteger& acc) {
        CompositionVector c(18);
        c[0] = lead;
        CompositionStream tail(n - lead, 17);
        BigInteger term;
        do {
            std::copy(tail.current().begin(), tail.current().end(), c.begin() + 1);
            const Abbreviations a = abbreviations(c);
            term = fact[n];
            for (unsigned part : c) {
                if (part > 1) {
                    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), fact[part].get_mpz_t());
                }
            }
            term *= pow3s[a.k_dprime];
            term *= w(a.points[0]);
            term *= w(a.points[1]);
            term *= w(a.points[2]);
            if (a.k_prime % 2 == 0) {
                acc += term;
            } else {
                acc -= term;
            }
        } while (tail.next());
    });

    // 8 / 3^{2k-3} * sum / ((2k+3)!)^3
    const BigInteger denom_fact = fact[n + 3] * fact[n + 3] * fact[n + 3];
    Rational result = make_rational(8 * sum, denom_fact);
    result *= pow3(3 - static_cast<int>(n));
    return result;
}

// --------------------------------------------------------------- fast path

BigInteger shifted_moment_scaled(unsigned a, unsigned b, unsigned c) {
    // (3x-1)^a (3y-1)^b (3z)^c expanded; each x^i y^j z^c integrates to
    // i! j! c! / (i+j+c+3)!, which times (a+b+c+3)! is an integer.
    const unsigned d = a + b + c;
    const BigInteger top = factorial(d + 3);
    const BigInteger pz = pow_int(3, c) * factorial(c);
    BigInteger sum = 0;
    for (unsigned i = 0; i <= a; ++i) {
        const BigInteger ci = binomial(a, i) * pow_int(3, i) * factorial(i);
        const bool neg_i = (a - i) % 2 == 1;
        for (unsigned j = 0; j <= b; ++j) {
            BigInteger t = ci * binomial(b, j) * pow_int(3, j) * factorial(j) * pz;
            t *= top / factorial(i + j + c + 3);
            if (neg_i != ((b - j) % 2 == 1)) {
                sum -= t;
            } else {
                sum += t;
            }
        }
    }
    return sum;
}

Rational even_moment_fast(unsigned k, const MomentOptions& opts) {
    if (k == 0) {
        return Rational(1);
    }
    const unsigned n = 2 * k;

    // Inner-loop count: sum over |delta| = n of prod(delta_i + 1) = C(n+5, 5).
    const BigInteger work = binomial(n + 5, 5);
    if (work > BigInteger(std::to_string(opts.fast_term_budget))) {
        throw std::length_error("even_moment_fast: k = " + std::to_string(k) + " needs " +
                                work.get_str() + " products, budget " +
                                std::to_string(opts.fast_term_budget));
    }

    // Exponent triples of total degree n, indexed by (a, b); c = n - a - b.
    const unsigned side = n + 1;
    auto idx = [side](unsigned a, unsigned b) { return a * side + b; };
    std::vector<BigInteger> shifted(side * side);
    for (unsigned a = 0; a <= n; ++a) {
        for (unsigned b = 0; a + b <= n; ++b) {
            shifted[idx(a, b)] = shifted_moment_scaled(a, b, n - a - b);
        }
    }
    std::vector<std::vector<BigInteger>> binom(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        binom[i].resize(i + 1);
        for (unsigned j = 0; j <= i; ++j) {
            binom[i][j] = binomial(i, j);
        }
    }
    const BigInteger fact_n = factorial(n);

    std::vector<std::array<unsigned, 3>> deltas;
    for (unsigned a = 0; a <= n; ++a) {
        for (unsigned b = 0; a + b <= n; ++b) {
            deltas.push_back({a, b, n - a - b});
        }
    }

    // With u = Y1 x Y2, (u . Y3)^n = sum_delta n!/delta! u^delta Y3^delta and
    //   u1 = a2 b3 - a3 b2, u2 = a3 b1 - a1 b3, u3 = a1 b2 - a2 b1
    // for a = 3 Y1, b = 3 Y2 (up to the factor 9).
    const BigInteger sum = parallel_sum(
        static_cast<unsigned>(deltas.size()), resolve_threads(opts.threads),
        [&](unsigned t, BigInteger& acc) {
            const auto [d1, d2, d3] = deltas[t];
            BigInteger outer = fact_n;
            mpz_divexact(outer.get_mpz_t(), outer.get_mpz_t(), factorial(d1).get_mpz_t());
            mpz_divexact(outer.get_mpz_t(), outer.get_mpz_t(), factorial(d2).get_mpz_t());
            mpz_divexact(outer.get_mpz_t(), outer.get_mpz_t(), factorial(d3).get_mpz_t());
            outer *= shifted[idx(d1, d2)];

            BigInteger inner = 0;
            BigInteger term;
            for (unsigned i1 = 0; i1 <= d1; ++i1) {
                for (unsigned i2 = 0; i2 <= d2; ++i2) {
                    for (unsigned i3 = 0; i3 <= d3; ++i3) {
                        const unsigned a1 = d2 - i2 + i3;
                        const unsigned a2 = i1 + d3 - i3;
                        const unsigned b1 = i2 + d3 - i3;
                        const unsigned b2 = d1 - i1 + i3;
                        term = binom[d1][i1] * binom[d2][i2];
                        term *= binom[d3][i3];
                        term *= shifted[idx(a1, a2)];
                        term *= shifted[idx(b1, b2)];
                        if (((d1 - i1) + (d2 - i2) + (d3 - i3)) % 2 == 1) {
                            inner -= term;
                        } else {
                            inner += term;
                        }
                    }
                }
            }
            acc += outer * inner;
        });

    // moment = 6^3 * 3^{-3n} * sum / ((n+3)!)^3
    const BigInteger f = factorial(n + 3);
    Rational result = make_rational(216 * sum, f * f * f);
    result *= pow3(-3 * static_cast<int>(n));
    return result;
}

// ---------------------------------------------------------- expansion path

SparsePoly power_of_D(unsigned exponent) {
    const SparsePoly d = build_D();
    SparsePoly p = SparsePoly::one();
    for (unsigned i = 0; i < exponent; ++i) {
        p = poly_mul(p, d);
    }
    return p;
}

Rational even_moment_expand(unsigned k) {
    const SparsePoly p = power_of_D(2 * k);
    Rational sum = 0;
    for (const auto& [m, c] : p.sorted_terms()) {
        const unsigned z_degree = m.exponent(2) + m.exponent(5) + m.exponent(8);
        if (z_degree != 2 * k) {
            throw MomentIntegrityError("even_moment_expand: z-degree " + std::to_string(z_degree) +
                                       " in (3D)^" + std::to_string(2 * k));
        }
        sum += c * triple_integral(m);
    }
    return 216 * sum * pow3(p.scale_pow3());
}

// ------------------------------------------------------------ MomentTable

std::string to_string(Provenance p) {
    switch (p) {
    case Provenance::direct: return "direct";
    case Provenance::fast: return "fast";
    case Provenance::file: return "file";
    }
    return "unknown";
}

void MomentTable::set(unsigned k, Rational value, Provenance p) {
    if (k == 0) {
        throw std::invalid_argument("MomentTable: order 0 is implicit");
    }
    entries_[k] = Entry{std::move(value), p};
}

const Rational& MomentTable::at(unsigned k) const {
    auto it = entries_.find(k);
    if (it == entries_.end()) {
        throw std::out_of_range("moment of order " + std::to_string(2 * k) + " (k = " +
                                std::to_string(k) + ") missing from table");
    }
    return it->second.value;
}

Provenance MomentTable::provenance(unsigned k) const {
    auto it = entries_.find(k);
    if (it == entries_.end()) {
        throw std::out_of_range("moment k = " + std::to_string(k) + " missing from table");
    }
    return it->second.provenance;
}

unsigned MomentTable::contiguous_orders() const {
    unsigned n = 0;
    while (entries_.count(n + 1) != 0) {
        ++n;
    }
    return n;
}

MomentTable MomentTable::truncated(unsigned k_max) const {
    MomentTable t;
    for (const auto& [k, e] : entries_) {
        if (k <= k_max) {
            t.entries_.emplace(k, e);
        }
    }
    return t;
}

void MomentTable::check_invariants() const {
    const Rational* prev = nullptr;
    unsigned prev_k = 0;
    for (const auto& [k, e] : entries_) {
        if (e.value <= 0) {
            throw MomentIntegrityError("moment k = " + std::to_string(k) + " is not positive");
        }
        if (e.value > pow3(-2 * static_cast<int>(k))) {
            throw MomentIntegrityError("moment k = " + std::to_string(k) + " exceeds 3^{-2k}");
        }
        if (prev != nullptr && prev_k + 1 == k && e.value * 9 > *prev) {
            throw MomentIntegrityError("moment k = " + std::to_string(k) +
                                       " exceeds 1/9 of the previous order");
        }
        prev = &e.value;
        prev_k = k;
    }
}

void write_moment_cache(std::ostream& out, const MomentTable& table) {
    out << kMomentCacheHeader << '\n';
    for (const auto& [k, e] : table.entries()) {
        out << k << '\t' << e.value.get_num().get_str() << '\t' << e.value.get_den().get_str()
            << '\n';
    }
}

MomentTable read_moment_cache(std::istream& in) {
    MomentTable table;
    std::string line;
    if (!std::getline(in, line)) {
        return table;
    }
    if (line != kMomentCacheHeader) {
        throw std::runtime_error("moment cache: bad header '" + line + "'");
    }
    unsigned lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string k_str, num, den, extra;
        if (!std::getline(fields, k_str, '\t') || !std::getline(fields, num, '\t') ||
            !std::getline(fields, den, '\t') || std::getline(fields, extra, '\t')) {
            throw std::runtime_error("moment cache: line " + std::to_string(lineno) +
                                     " is not k<TAB>num<TAB>den");
        }
        unsigned k = 0;
        if (std::from_chars(k_str.data(), k_str.data() + k_str.size(), k).ec != std::errc{} ||
            k == 0) {
            throw std::runtime_error("moment cache: bad order on line " + std::to_string(lineno));
        }
        if (table.contains(k)) {
            throw std::runtime_error("moment cache: duplicate order " + std::to_string(k));
        }
        const BigInteger n = parse_rational(num).get_num();
        const BigInteger d = parse_rational(den).get_num();
        if (d <= 0 || gcd(n, d) != 1) {
            throw std::runtime_error("moment cache: line " + std::to_string(lineno) +
                                     " is not a reduced fraction");
        }
        table.set(k, Rational(n, d), Provenance::file);
    }
    return table;
}

void write_moment_cache(const std::filesystem::path& path, const MomentTable& table) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write moment cache " + path.string());
    }
    write_moment_cache(out, table);
}

MomentTable read_moment_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read moment cache " + path.string());
    }
    return read_moment_cache(in);
}

namespace {

void verify_low_orders(const MomentTable& table, unsigned k_max, const MomentOptions& opts) {
    const unsigned upto = std::min(4u, k_max);
    for (unsigned k = 1; k <= upto; ++k) {
        if (!table.contains(k)) {
            continue;
        }
        MomentOptions direct_opts = opts;
        direct_opts.direct_cap = std::max(direct_opts.direct_cap, upto);
        const Rational direct = even_moment_direct(k, direct_opts);
        if (direct != table.at(k)) {
            throw MomentIntegrityError("moment k = " + std::to_string(k) + " (" +
                                       to_string(table.provenance(k)) + ") = " +
                                       to_string(table.at(k)) + " disagrees with direct " +
                                       to_string(direct));
        }
    }
}

// Fills orders 1..k_max missing from `table` with the fast path.
void fill_fast(MomentTable& table, unsigned k_max, const MomentOptions& opts) {
    for (unsigned k = 1; k <= k_max; ++k) {
        if (table.contains(k)) {
            continue;
        }
        try {
            table.set(k, even_moment_fast(k, opts), Provenance::fast);
        } catch (const std::length_error& e) {
            throw MomentBudgetError(e.what(), table);
        }
    }
}

} // namespace

MomentTable moment_table(unsigned k_max, const MomentOptions& opts) {
    if (k_max == 0) {
        throw std::invalid_argument("moment_table: k_max must be positive");
    }
    MomentTable table;
    fill_fast(table, k_max, opts);
    verify_low_orders(table, k_max, opts);
    table.check_invariants();
    return table;
}

MomentTable moment_table(unsigned k_max, const std::filesystem::path& cache,
                         const MomentOptions& opts) {
    if (k_max == 0) {
        throw std::invalid_argument("moment_table: k_max must be positive");
    }
    MomentTable table;
    if (std::filesystem::exists(cache)) {
        table = read_moment_cache(cache);
    }
    const std::size_t loaded = table.size();
    bool complete = true;
    for (unsigned k = 1; k <= k_max; ++k) {
        complete = complete && table.contains(k);
    }
    if (complete) {
        verify_low_orders(table, k_max, opts);
        table.check_invariants();
        return table.truncated(k_max);
    }

    try {
        fill_fast(table, k_max, opts);
    } catch (const MomentBudgetError& e) {
        if (e.partial().size() > loaded) {
            write_moment_cache(cache, e.partial());
        }
        throw;
    }
    verify_low_orders(table, k_max, opts);
    table.check_invariants();
    write_moment_cache(cache, table);
    return table.truncated(k_max);
}

} // namespace tetracert
