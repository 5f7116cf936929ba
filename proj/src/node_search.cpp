#include "tetracert/node_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tetracert {

namespace {

// Simplex arithmetic runs in extended precision: the optimal basis holds
// pairs of adjacent grid points, so it is badly conditioned.
using Real = long double;

constexpr double kThird = 1.0 / 3.0;
constexpr double kActiveTol = 1e-9;
constexpr double kPricingTol = 1e-11;
constexpr double kPivotTol = 1e-10;
constexpr std::size_t kRefactorEvery = 64;
constexpr std::size_t kIterationLimit = 200000;

// Integer coefficients (in t = x^2) of T_j(18 t - 1), j = 0..n.
std::vector<std::vector<BigInteger>> shifted_chebyshev(unsigned n) {
    std::vector<std::vector<BigInteger>> p;
    p.push_back({BigInteger(1)});
    if (n >= 1) {
        p.push_back({BigInteger(-1), BigInteger(18)});
    }
    for (unsigned j = 1; j < n; ++j) {
        std::vector<BigInteger> next(j + 2, BigInteger(0));
        for (std::size_t i = 0; i < p[j].size(); ++i) {
            next[i + 1] += 36 * p[j][i];
            next[i] -= 2 * p[j][i];
        }
        for (std::size_t i = 0; i < p[j - 1].size(); ++i) {
            next[i] -= p[j - 1][i];
        }
        p.push_back(std::move(next));
    }
    return p;
}

// T_0..T_n at y = 18 x^2 - 1.
void chebyshev_row(Real x, unsigned n, std::vector<Real>& row) {
    row.assign(n + 1, 0.0L);
    const Real y = 18.0L * x * x - 1.0L;
    row[0] = 1.0;
    if (n >= 1) {
        row[1] = y;
    }
    for (unsigned j = 2; j <= n; ++j) {
        row[j] = 2.0L * y * row[j - 1] - row[j - 2];
    }
}

// Clenshaw recurrence.
template <class T>
Real eval_chebyshev(std::span<const T> coeffs, Real x) {
    const Real y = 18.0L * x * x - 1.0L;
    Real b1 = 0.0L, b2 = 0.0L;
    for (std::size_t j = coeffs.size(); j-- > 1;) {
        const Real b0 = 2.0L * y * b1 - b2 + coeffs[j];
        b2 = b1;
        b1 = b0;
    }
    return y * b1 - b2 + (coeffs.empty() ? 0.0L : Real(coeffs[0]));
}

// Long double to Rational without rounding: the 64-bit significand splits
// exactly into two doubles.
Rational exact(Real x) {
    const double hi = static_cast<double>(x);
    const double lo = static_cast<double>(x - static_cast<Real>(hi));
    return Rational(hi) + Rational(lo);
}

Real to_real(const Rational& q) {
    const double hi = q.get_d();
    const Rational rest = q - Rational(hi);
    return static_cast<Real>(hi) + static_cast<Real>(rest.get_d());
}

// Dense revised simplex for  max p^T y  s.t.  A y = rhs, y >= 0, where the
// first `grid` columns are structural and the last m are artificial.
class DualSimplex {
public:
    DualSimplex(std::vector<std::vector<Real>> columns, std::vector<Real> rhs)
        : m_(rhs.size()), structural_(columns.size()), cols_(std::move(columns)),
          rhs_(std::move(rhs)) {
        for (std::size_t j = 0; j < m_; ++j) {
            std::vector<Real> e(m_, 0.0);
            e[j] = rhs_[j] >= 0.0 ? 1.0L : -1.0L;
            cols_.push_back(std::move(e));
            basis_.push_back(structural_ + j);
        }
        refactor();
    }

    // Phase 1 then phase 2 with profits `profit` on structural columns.
    void solve(const std::vector<Real>& profit) {
        std::vector<Real> phase1(cols_.size(), 0.0);
        for (std::size_t j = structural_; j < cols_.size(); ++j) {
            phase1[j] = -1.0;
        }
        run(phase1, true);
        Real infeasibility = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= structural_) {
                infeasibility += xb_[i];
            }
        }
        if (infeasibility > 1e-9) {
            throw std::logic_error("one-sided LP: dual infeasible (primal unbounded)");
        }
        evict_artificials();

        std::vector<Real> phase2(cols_.size(), 0.0);
        std::copy(profit.begin(), profit.end(), phase2.begin());
        run(phase2, false);
        profit_ = phase2;
    }

    // Simplex multipliers p_B^T B^{-1}.
    std::vector<Real> multipliers() const {
        std::vector<Real> pi(m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            const Real pb = profit_[basis_[i]];
            if (pb == 0.0) {
                continue;
            }
            for (std::size_t r = 0; r < m_; ++r) {
                pi[r] += pb * binv_[i * m_ + r];
            }
        }
        return pi;
    }

    // The optimal basis pairs adjacent grid points and is nearly singular, so
    // pi from the explicit inverse leaves residuals near 1e-9. Refine with
    // exactly computed residuals of B^T pi = p_B.
    std::vector<Real> refined_multipliers(int rounds = 4) const {
        std::vector<Real> pi = multipliers();
        for (int round = 0; round < rounds; ++round) {
            std::vector<Real> r(m_);
            for (std::size_t i = 0; i < m_; ++i) {
                const auto& col = cols_[basis_[i]];
                Rational acc = exact(profit_[basis_[i]]);
                for (std::size_t k = 0; k < m_; ++k) {
                    acc -= exact(pi[k]) * exact(col[k]);
                }
                r[i] = to_real(acc);
            }
            for (std::size_t i = 0; i < m_; ++i) {
                for (std::size_t k = 0; k < m_; ++k) {
                    pi[k] += r[i] * binv_[i * m_ + k];
                }
            }
        }
        return pi;
    }

    const std::vector<std::size_t>& basis() const { return basis_; }
    const std::vector<Real>& values() const { return xb_; }
    std::size_t iterations() const { return iterations_; }
    bool hit_limit() const { return hit_limit_; }

private:
    void run(const std::vector<Real>& profit, bool allow_artificial) {
        profit_ = profit;
        std::vector<char> in_basis(cols_.size(), 0);
        for (auto b : basis_) {
            in_basis[b] = 1;
        }
        std::vector<Real> u(m_);
        std::size_t since_refactor = 1; // evict_artificials may have pivoted
        while (true) {
            if (iterations_ >= kIterationLimit) {
                hit_limit_ = true;
                return;
            }
            const std::vector<Real> pi = multipliers();
            // Bland: lowest-index column with positive reduced profit.
            std::size_t entering = cols_.size();
            const std::size_t limit = allow_artificial ? cols_.size() : structural_;
            for (std::size_t j = 0; j < limit; ++j) {
                if (in_basis[j]) {
                    continue;
                }
                Real d = profit[j];
                for (std::size_t r = 0; r < m_; ++r) {
                    d -= pi[r] * cols_[j][r];
                }
                if (d > kPricingTol) {
                    entering = j;
                    break;
                }
            }
            if (entering == cols_.size()) {
                // Confirm optimality with a freshly factored basis.
                if (since_refactor == 0) {
                    return;
                }
                refactor();
                since_refactor = 0;
                continue;
            }
            ftran(cols_[entering], u);
            // Ratio test, ties broken by the smallest basic index.
            std::size_t leave = m_;
            Real best = std::numeric_limits<Real>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (u[i] <= kPivotTol) {
                    continue;
                }
                const Real ratio = std::max(xb_[i], Real(0)) / u[i];
                if (leave == m_) {
                    best = ratio;
                    leave = i;
                    continue;
                }
                const Real slack = Real(1e-12) * std::max(Real(1), best);
                if (ratio < best - slack || (ratio <= best + slack && basis_[i] < basis_[leave])) {
                    best = std::min(best, ratio);
                    leave = i;
                }
            }
            if (leave == m_) {
                throw std::logic_error("one-sided LP: dual unbounded (primal infeasible)");
            }
            pivot(leave, entering, u);
            in_basis[basis_[leave]] = 0;
            in_basis[entering] = 1;
            basis_[leave] = entering;
            ++iterations_;
            if (++since_refactor >= kRefactorEvery) {
                refactor();
                since_refactor = 0;
            }
        }
    }

    void evict_artificials() {
        std::vector<Real> u(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < structural_) {
                continue;
            }
            for (std::size_t j = 0; j < structural_; ++j) {
                if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) {
                    continue;
                }
                ftran(cols_[j], u);
                if (std::abs(u[i]) > 1e-9) {
                    pivot(i, j, u);
                    basis_[i] = j;
                    break;
                }
            }
            if (basis_[i] >= structural_) {
                throw std::logic_error("one-sided LP: redundant constraint rows");
            }
        }
        refactor();
    }

    void ftran(const std::vector<Real>& col, std::vector<Real>& out) const {
        for (std::size_t i = 0; i < m_; ++i) {
            Real s = 0.0;
            for (std::size_t r = 0; r < m_; ++r) {
                s += binv_[i * m_ + r] * col[r];
            }
            out[i] = s;
        }
    }

    void pivot(std::size_t leave, std::size_t /*entering*/, const std::vector<Real>& u) {
        const Real piv = u[leave];
        for (std::size_t r = 0; r < m_; ++r) {
            binv_[leave * m_ + r] /= piv;
        }
        xb_[leave] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == leave || u[i] == 0.0) {
                continue;
            }
            const Real f = u[i];
            for (std::size_t r = 0; r < m_; ++r) {
                binv_[i * m_ + r] -= f * binv_[leave * m_ + r];
            }
            xb_[i] -= f * xb_[leave];
        }
    }

    // Gauss-Jordan inverse of the basis with partial pivoting.
    void refactor() {
        std::vector<Real> a(m_ * m_), inv(m_ * m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t r = 0; r < m_; ++r) {
                a[r * m_ + i] = cols_[basis_[i]][r];
            }
            inv[i * m_ + i] = 1.0;
        }
        for (std::size_t c = 0; c < m_; ++c) {
            std::size_t p = c;
            for (std::size_t r = c + 1; r < m_; ++r) {
                if (std::abs(a[r * m_ + c]) > std::abs(a[p * m_ + c])) {
                    p = r;
                }
            }
            if (std::abs(a[p * m_ + c]) < 1e-300) {
                throw std::logic_error("one-sided LP: singular basis");
            }
            if (p != c) {
                for (std::size_t k = 0; k < m_; ++k) {
                    std::swap(a[p * m_ + k], a[c * m_ + k]);
                    std::swap(inv[p * m_ + k], inv[c * m_ + k]);
                }
            }
            const Real d = a[c * m_ + c];
            for (std::size_t k = 0; k < m_; ++k) {
                a[c * m_ + k] /= d;
                inv[c * m_ + k] /= d;
            }
            for (std::size_t r = 0; r < m_; ++r) {
                if (r == c || a[r * m_ + c] == 0.0) {
                    continue;
                }
                const Real f = a[r * m_ + c];
                for (std::size_t k = 0; k < m_; ++k) {
                    a[r * m_ + k] -= f * a[c * m_ + k];
                    inv[r * m_ + k] -= f * inv[c * m_ + k];
                }
            }
        }
        binv_ = std::move(inv);
        xb_.assign(m_, 0.0);
        ftran(rhs_, xb_);
    }

    std::size_t m_;
    std::size_t structural_;
    std::vector<std::vector<Real>> cols_;
    std::vector<Real> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<Real> binv_;
    std::vector<Real> xb_;
    std::vector<Real> profit_;
    std::size_t iterations_ = 0;
    bool hit_limit_ = false;
};

} // namespace

std::vector<double> equispaced_grid(unsigned intervals) {
    if (intervals == 0) {
        throw std::invalid_argument("equispaced_grid: need at least one interval");
    }
    std::vector<double> g(intervals + 1);
    for (unsigned l = 0; l <= intervals; ++l) {
        g[l] = static_cast<double>(l) / (3.0 * intervals);
    }
    g.back() = kThird;
    return g;
}

LpProblem make_lp_problem(const MomentTable& moments, unsigned degree, unsigned intervals) {
    LpProblem p;
    p.degree = degree;
    p.grid = equispaced_grid(intervals);
    p.moments.push_back(1.0);
    for (unsigned k = 1; k <= degree; ++k) {
        p.moments.push_back(moments.at(k).get_d());
    }
    return p;
}

std::string to_string(LpStatus s) {
    return s == LpStatus::optimal ? "optimal" : "iteration-limit";
}

LpSolution solve_onesided_lp(const LpProblem& problem) {
    const unsigned n = problem.degree;
    if (problem.moments.size() != n + 1) {
        throw std::invalid_argument("solve_onesided_lp: need moments mu_0..mu_2n");
    }
    if (problem.grid.size() < n + 1) {
        throw std::invalid_argument("solve_onesided_lp: grid smaller than the degree");
    }
    if (!std::is_sorted(problem.grid.begin(), problem.grid.end()) || problem.grid.front() < 0.0 ||
        std::abs(problem.grid.back() - kThird) > 1e-15) {
        throw std::invalid_argument("solve_onesided_lp: grid must be sorted in [0, 1/3] ending at 1/3");
    }

    // Objective in the Chebyshev basis: E T_j(18 V^2 - 1).
    const auto cheb = shifted_chebyshev(n);
    std::vector<Real> cost(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
        Real s = 0.0L;
        for (std::size_t i = 0; i < cheb[j].size(); ++i) {
            s += static_cast<Real>(cheb[j][i].get_d()) * problem.moments[i];
        }
        cost[j] = s;
    }

    std::vector<std::vector<Real>> columns(problem.grid.size());
    std::vector<Real> profit(problem.grid.size());
    for (std::size_t l = 0; l < problem.grid.size(); ++l) {
        chebyshev_row(problem.grid[l], n, columns[l]);
        profit[l] = problem.grid[l];
    }

    DualSimplex simplex(columns, cost);
    simplex.solve(profit);

    LpSolution sol;
    sol.status = simplex.hit_limit() ? LpStatus::iteration_limit : LpStatus::optimal;
    sol.iterations = simplex.iterations();
    const std::vector<Real> pi = simplex.refined_multipliers();
    sol.chebyshev.assign(pi.begin(), pi.end());

    Real obj = 0.0L;
    for (unsigned j = 0; j <= n; ++j) {
        obj += pi[j] * cost[j];
    }
    sol.objective = static_cast<double>(obj);

    // Monomial coefficients, accumulated exactly.
    sol.coefficients.assign(n + 1, 0.0L);
    for (unsigned i = 0; i <= n; ++i) {
        Rational a = 0;
        for (unsigned j = i; j <= n; ++j) {
            a += exact(pi[j]) * cheb[j][i];
        }
        sol.coefficients[i] = to_real(a);
    }

    std::vector<double> weight(problem.grid.size(), 0.0);
    for (std::size_t i = 0; i < simplex.basis().size(); ++i) {
        weight[simplex.basis()[i]] = static_cast<double>(simplex.values()[i]);
    }
    for (std::size_t l = 0; l < problem.grid.size(); ++l) {
        const Real x = problem.grid[l];
        const double slack = static_cast<double>(eval_chebyshev(std::span<const Real>(pi), x) - x);
        sol.max_violation = std::max(sol.max_violation, -slack / kThird);
        if (slack <= kActiveTol * kThird || weight[l] > 0.0) {
            sol.active.push_back(l);
            sol.multipliers.push_back(weight[l]);
        }
    }
    if (sol.active.empty()) {
        throw std::logic_error("one-sided LP: optimum touches no constraint");
    }
    return sol;
}

long double eval_lp_poly(const LpSolution& s, long double x) {
    return eval_chebyshev(std::span<const long double>(s.chebyshev), x);
}

std::vector<double> extract_nodes(const LpSolution& s, std::span<const double> grid) {
    if (s.status != LpStatus::optimal) {
        throw std::invalid_argument("extract_nodes: LP solution is not optimal");
    }
    std::vector<double> nodes;
    std::size_t i = 0;
    while (i < s.active.size()) {
        std::size_t j = i;
        while (j + 1 < s.active.size() && s.active[j + 1] == s.active[j] + 1) {
            ++j;
        }
        double wsum = 0.0, wx = 0.0, xsum = 0.0;
        std::size_t count = 0;
        for (std::size_t r = i; r <= j; ++r) {
            const double x = grid[s.active[r]];
            if (x == 0.0) {
                continue;
            }
            wsum += s.multipliers[r];
            wx += s.multipliers[r] * x;
            xsum += x;
            ++count;
        }
        if (count > 0) {
            nodes.push_back(wsum > 0.0 ? wx / wsum : xsum / static_cast<double>(count));
        }
        i = j + 1;
    }
    if (nodes.empty()) {
        throw std::logic_error("extract_nodes: no active cluster away from x = 0");
    }
    return nodes;
}

Rational rationalize(double x, unsigned long max_denominator) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::invalid_argument("rationalize: x must be finite and nonnegative");
    }
    if (max_denominator == 0) {
        throw std::invalid_argument("rationalize: max_denominator must be positive");
    }
    const Rational exact(x);
    BigInteger p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    BigInteger n = exact.get_num(), d = exact.get_den();
    const BigInteger qmax(max_denominator);
    while (true) {
        const BigInteger a = n / d;
        const BigInteger q2 = q0 + a * q1;
        if (q2 > qmax) {
            break;
        }
        BigInteger p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = std::move(p2);
        q1 = q2;
        BigInteger r = n - a * d;
        n = d;
        d = std::move(r);
        if (d == 0) {
            return make_rational(p1, q1);
        }
    }
    // Best semiconvergent versus the last convergent.
    const BigInteger k = (qmax - q0) / q1;
    const Rational semi = make_rational(p0 + k * p1, q0 + k * q1);
    const Rational conv = make_rational(p1, q1);
    return abs(conv - exact) <= abs(semi - exact) ? conv : semi;
}

NodeSet rationalize_nodes(std::span<const double> estimates, unsigned long max_denominator) {
    std::vector<Rational> out;
    for (double x : estimates) {
        Rational r = rationalize(x, max_denominator);
        if (out.empty() || out.back() != r) {
            out.push_back(std::move(r));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return NodeSet(std::move(out));
}

} // namespace tetracert
