#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tetracert/exact.hpp"
#include "tetracert/simplex_integrate.hpp"

namespace tetracert {

// Exponent vector (l1, m1, n1, l2, m2, n2, l3, m3, n3) of x_i^l_i y_i^m_i z_i^n_i,
// packed 7 bits per exponent.
class Monomial9 {
public:
    static constexpr unsigned kBits = 7;
    static constexpr unsigned kMaxExponent = (1u << kBits) - 1;

    Monomial9() = default;
    explicit Monomial9(const std::array<unsigned, 9>& exps);

    unsigned exponent(unsigned index) const {
        return static_cast<unsigned>((packed_ >> (kBits * index)) & kMaxExponent);
    }
    Exponent3 point(unsigned p) const {
        return {exponent(3 * p), exponent(3 * p + 1), exponent(3 * p + 2)};
    }
    std::array<unsigned, 9> exponents() const;
    unsigned degree() const;
    std::uint64_t key() const { return packed_; }

    /// Exponent-wise sum. Throws std::overflow_error past kMaxExponent.
    Monomial9 operator*(const Monomial9& other) const;

    friend bool operator==(const Monomial9&, const Monomial9&) = default;
    friend auto operator<=>(const Monomial9&, const Monomial9&) = default;

private:
    std::uint64_t packed_ = 0;
};

struct Monomial9Hash {
    std::size_t operator()(const Monomial9& m) const noexcept {
        std::uint64_t z = m.key() + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(z ^ (z >> 31));
    }
};

// 3^scale_pow3 * sum(coeff * monomial) over the nine coordinates of X1, X2, X3.
class SparsePoly {
public:
    using TermMap = std::unordered_map<Monomial9, BigInteger, Monomial9Hash>;

    SparsePoly() = default;
    static SparsePoly one();

    void add_term(const Monomial9& m, const BigInteger& coeff);
    BigInteger coefficient(const Monomial9& m) const;

    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    std::vector<std::pair<Monomial9, BigInteger>> sorted_terms() const;

    int scale_pow3() const { return scale_pow3_; }
    void set_scale_pow3(int s) { scale_pow3_ = s; }

    /// Exact value at a point given as (x1, y1, z1, x2, ..., z3), including the scale.
    Rational evaluate(const std::array<Rational, 9>& point) const;

private:
    TermMap terms_;
    int scale_pow3_ = 0;
};

/// Exact product. Scales add; cancelled terms are dropped.
SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b);

/// 3 D as an integer polynomial (scale_pow3 = -1), where D is the 4x4
/// determinant with rows (X_i, 1) and (1/3, 1/3, 0, 1).
SparsePoly build_D();

/// D evaluated from the determinant directly; used to cross-check build_D.
Rational determinant_D(const std::array<Rational, 9>& point);

using CompositionVector = std::vector<unsigned>;

struct Abbreviations {
    unsigned k_prime = 0;   // exponent of -1
    unsigned k_dprime = 0;  // exponent of 3
    std::array<Exponent3, 3> points{};
};

/// The fixed linear map from the 18 term multiplicities to the sign and
/// power-of-3 exponents and the per-point monomial exponents.
Abbreviations abbreviations(std::span<const unsigned> c);

// Lexicographic stream over compositions of `total` into `parts` nonnegative
// parts, starting at (0, ..., 0, total) and ending at (total, 0, ..., 0).
class CompositionStream {
public:
    CompositionStream(unsigned total, unsigned parts);

    const CompositionVector& current() const { return current_; }
    /// Advances; returns false once the last composition has been consumed.
    bool next();

private:
    CompositionVector current_;
};

std::vector<CompositionVector> enumerate_compositions(unsigned total, unsigned parts);
BigInteger count_compositions(unsigned total, unsigned parts);

struct MomentOptions {
    unsigned threads = 0;            // 0: TETRACERT_THREADS or hardware concurrency
    unsigned direct_cap = 5;         // largest k accepted by the direct enumerator
    std::uint64_t fast_term_budget = 200'000'000; // inner products allowed per order
};

unsigned resolve_threads(unsigned requested);

class MomentCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MomentIntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// E V^{2k} by summing over all compositions of 2k into 18 parts.
Rational even_moment_direct(unsigned k, const MomentOptions& opts = {});

/// E V^{2k} by integrating one point at a time: D = Y3 . (Y1 x Y2) with
/// Y_i = X_i - c, so the X3 integral only needs translated-simplex moments of
/// degree 2k, and the remaining double integral factors per point.
Rational even_moment_fast(unsigned k, const MomentOptions& opts = {});

/// E V^{2k} by expanding (3D)^{2k} as a SparsePoly and integrating term by term.
/// Memory grows quickly; intended for k <= 3.
Rational even_moment_expand(unsigned k);

/// (3D)^{2k} via repeated multiplication by build_D().
SparsePoly power_of_D(unsigned exponent);

/// Exact integral of (3x - 1)^a (3y - 1)^b (3z)^c over T_o, scaled by (d + 3)!
/// for d = a + b + c. Always an integer.
BigInteger shifted_moment_scaled(unsigned a, unsigned b, unsigned c);

enum class Provenance { direct, fast, file };
std::string to_string(Provenance p);

class MomentTable {
public:
    struct Entry {
        Rational value;
        Provenance provenance = Provenance::fast;
    };

    void set(unsigned k, Rational value, Provenance p);
    bool contains(unsigned k) const { return entries_.count(k) != 0; }
    const Rational& at(unsigned k) const;
    Provenance provenance(unsigned k) const;
    /// Largest n such that orders 1..n are all present.
    unsigned contiguous_orders() const;
    std::size_t size() const { return entries_.size(); }
    const std::map<unsigned, Entry>& entries() const { return entries_; }
    MomentTable truncated(unsigned k_max) const;

    /// Throws MomentIntegrityError unless every value is positive, at most
    /// 3^{-2k}, and at most 1/9 of the previous order.
    void check_invariants() const;

private:
    std::map<unsigned, Entry> entries_;
};

class MomentBudgetError : public std::runtime_error {
public:
    MomentBudgetError(const std::string& what, MomentTable partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const MomentTable& partial() const { return partial_; }

private:
    MomentTable partial_;
};

inline constexpr const char* kMomentCacheHeader = "tetra-moments v1";

void write_moment_cache(std::ostream& out, const MomentTable& table);
MomentTable read_moment_cache(std::istream& in);
void write_moment_cache(const std::filesystem::path& path, const MomentTable& table);
MomentTable read_moment_cache(const std::filesystem::path& path);

/// Orders 1..k_max by the fast path, with k <= min(4, k_max) re-derived by
/// the direct enumerator. Throws MomentIntegrityError on any disagreement.
MomentTable moment_table(unsigned k_max, const MomentOptions& opts = {});

/// As above, backed by a cache file. A non-empty cache is trusted only after
/// its low orders match the direct enumerator; missing orders are computed
/// and the file is rewritten. A budget failure checkpoints finished orders.
MomentTable moment_table(unsigned k_max, const std::filesystem::path& cache,
                         const MomentOptions& opts = {});

} // namespace tetracert
