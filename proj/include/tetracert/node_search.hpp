#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tetracert/exact.hpp"
#include "tetracert/moments.hpp"
#include "tetracert/onesided.hpp"

namespace tetracert {

// min sum_i a_i mu_{2i}  s.t.  sum_i a_i x_l^{2i} >= x_l  for every grid point.
struct LpProblem {
    std::vector<double> moments; // mu_0 .. mu_{2n}, i.e. E V^{2i} for i = 0..n
    std::vector<double> grid;    // sorted, within [0, 1/3], max = 1/3
    unsigned degree = 0;         // n
};

/// Grid l / (3L) for l = 0..L.
std::vector<double> equispaced_grid(unsigned intervals);

/// Builds the problem from exact moments (needs orders 1..degree).
LpProblem make_lp_problem(const MomentTable& moments, unsigned degree, unsigned intervals);

enum class LpStatus { optimal, iteration_limit };
std::string to_string(LpStatus s);

// Coefficients are long double: the optimum is badly conditioned and double
// rounding alone breaks feasibility at the 1e-10 level.
struct LpSolution {
    std::vector<long double> coefficients; // a_0 .. a_n (monomial basis in x^2)
    std::vector<long double> chebyshev;    // same polynomial in T_j(18 x^2 - 1)
    double objective = 0.0;
    std::vector<std::size_t> active;  // grid indices, ascending
    std::vector<double> multipliers;  // dual weight per active index (0 if nonbasic)
    LpStatus status = LpStatus::optimal;
    std::size_t iterations = 0;
    double max_violation = 0.0;       // largest violation, relative to 1/3
};

/// Dense revised simplex on the dual problem with Bland's rule. The primal
/// is parametrized by Chebyshev polynomials T_j(18 x^2 - 1) internally.
LpSolution solve_onesided_lp(const LpProblem& problem);

/// Evaluates the LP polynomial from its Chebyshev form.
long double eval_lp_poly(const LpSolution& s, long double x);

/// One estimate per run of adjacent active grid points: the dual-weighted
/// centroid of the run (plain centroid if all weights vanish). x = 0 is
/// excluded.
std::vector<double> extract_nodes(const LpSolution& s, std::span<const double> grid);

/// Best rational approximation with denominator <= max_denominator, via
/// continued-fraction convergents and semiconvergents of the exact binary
/// value of x.
Rational rationalize(double x, unsigned long max_denominator);

/// rationalize() applied to each estimate; duplicates are merged.
NodeSet rationalize_nodes(std::span<const double> estimates, unsigned long max_denominator);

} // namespace tetracert
