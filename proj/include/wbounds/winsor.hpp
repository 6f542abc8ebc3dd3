#pragma once

#include "wbounds/roots.hpp"
#include "wbounds/two_point.hpp"

namespace wbounds {

// Exact lower bounds on E exp{c W(X)}, W(x) = min(1, x), over all X with
// E X >= 0 and E X^2 <= sigma^2. Both bounds are attained by zero-mean
// two-point laws. Quantities named a_*, b_* live at cut level 1; queries at
// another cut y are reduced to level 1 via (c, sigma) -> (c*y, sigma/y).

/// Fixed-c bound L_{W;c,sigma} and its extremal law X_{a,b}, b = sigma^2 / a.
/// a_c_sigma, b_c_sigma and extremal are in cut-level-1 units; multiply by
/// query.cut (or use extremal.scaled) for the law of X itself.
struct WinsorSolution {
    BoundQuery query;
    double a_c_sigma = 0.0;
    double b_c_sigma = 0.0;
    double bound = 0.0;
    TwoPointDistribution extremal;
};

/// Universal (over all c > 0) bound L_{W;sigma}. c_sigma is the optimal tilt
/// at cut level 1; at cut level y the optimal tilt is c_sigma / y.
struct UniversalWinsorSolution {
    double sigma = 0.0;
    double cut = 1.0;
    double a_sigma = 0.0;
    double b_sigma = 0.0;
    double c_sigma = 0.0;
    double bound = 0.0;
    TwoPointDistribution extremal;

    [[nodiscard]] double c_sigma_at_cut() const { return c_sigma / cut; }
};

/// b*_{a,c} = (2(e^{c+ac} - 1) - ac) / c. Throws Overflow when the result is
/// not representable.
double b_star(double a, double c);

/// ln b*_{a,c}, finite for all a >= 0, c > 0 (no overflow for large c + ac).
double log_b_star(double a, double c);

/// The unique a > 0 with a * b*_{a,c} = sigma^2, solved in log form.
double solve_a_c_sigma(double c, double sigma, const RootTolerances& tol = {});

/// l1(a) = ln(a / sigma^2) - 2(a + 1)(a - sigma^2) / (a^2 + sigma^2).
double ell1(double a, double sigma);

/// The sign-change root of ell1 strictly inside (0, sigma^2).
double solve_a_sigma(double sigma, const RootTolerances& tol = {});

/// E exp{c W(X)} for a two-point law, in closed form.
double winsor_moment(const TwoPointDistribution& dist, double c);

/// m(a, sigma): the minimum over c of E exp{c W(X_{a,b})}, b = sigma^2 / a,
/// for 0 < a < sigma^2.
double two_point_min_over_c(double a, double sigma);

/// ln m(a, sigma); evaluated without forming m.
double log_two_point_min_over_c(double a, double sigma);

/// The minimizing tilt ln(sigma^2 / a) / (1 + a), for 0 < a < sigma^2.
double optimal_c_for_two_point(double a, double sigma);

WinsorSolution lower_bound_fixed_c(const BoundQuery& query, const RootTolerances& tol = {});

UniversalWinsorSolution lower_bound_universal(double sigma, double cut = 1.0,
                                              const RootTolerances& tol = {});

}  // namespace wbounds
