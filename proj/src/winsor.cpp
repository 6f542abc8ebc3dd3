#include "wbounds/winsor.hpp"

#include "wbounds/asymptotics.hpp"
#include "wbounds/errors.hpp"
#include "log_forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wbounds {

namespace {

void require_positive(double x, const char* what) {
    detail::require(std::isfinite(x) && x > 0.0, what);
}

double squared_sigma(double sigma) {
    require_positive(sigma, "sigma must be positive and finite");
    const double s2 = sigma * sigma;
    detail::require(std::isfinite(s2) && s2 > 0.0, "sigma^2 is not representable");
    return s2;
}

}  // namespace

double b_star(double a, double c) {
    detail::require(std::isfinite(a) && a >= 0.0, "b_star: a must be nonnegative");
    require_positive(c, "b_star: c must be positive");
    const double x = c + a * c;
    if (x > detail::kMaxExpArgument) {
        throw Overflow("b_star: e^(c + ac) overflows for a = " + std::to_string(a) +
                       ", c = " + std::to_string(c));
    }
    const double value = (2.0 * std::expm1(x) - a * c) / c;
    if (!std::isfinite(value)) {
        throw Overflow("b_star: result overflows");
    }
    return value;
}

double log_b_star(double a, double c) {
    detail::require(std::isfinite(a) && a >= 0.0, "log_b_star: a must be nonnegative");
    require_positive(c, "log_b_star: c must be positive");
    return detail::log_two_expm1_minus(c + a * c, a * c, c);
}

double solve_a_c_sigma(double c, double sigma, const RootTolerances& tol) {
    require_positive(c, "solve_a_c_sigma: c must be positive");
    require_positive(sigma, "solve_a_c_sigma: sigma must be positive");
    const double log_s2 = 2.0 * std::log(sigma);
    const auto g = [c, log_s2](double a) { return std::log(a) + log_b_star(a, c) - log_s2; };

    // Small sigma: a ~ c sigma^2 / (2(e^c - 1)); large sigma: a ~ ln(sigma^2) / c.
    const double log_small = std::log(c) + log_s2 - std::log(2.0) - detail::log_expm1(c);
    const double large = detail::log1p_exp(log_s2) / c;
    double seed = std::min(std::exp(log_small), large);
    if (!(seed > std::numeric_limits<double>::min()) || !std::isfinite(seed)) {
        seed = std::max(large, std::numeric_limits<double>::min());
    }
    return solve_positive_root(g, seed, SearchDirection::Outward, {}, tol).root;
}

double ell1(double a, double sigma) {
    require_positive(a, "ell1: a must be positive");
    const double s2 = squared_sigma(sigma);
    return detail::log_ratio(a, s2) - 2.0 * (a + 1.0) * (a - s2) / (a * a + s2);
}

double solve_a_sigma(double sigma, const RootTolerances& tol) {
    const double s2 = squared_sigma(sigma);
    // ell1(sigma^2) = 0 is a boundary root; keep every probe strictly inside.
    const ProbeLimits limits{1e-12 * std::min(1.0, s2), s2 * (1.0 - 1e-12)};
    const double t_star = asymptotic_constants().t_star;
    const double seed = std::clamp(0.5 * std::log1p(2.0 * t_star * s2), limits.lower, limits.upper);
    const auto f = [sigma](double a) { return ell1(a, sigma); };
    return solve_positive_root(f, seed, SearchDirection::Outward, limits, tol).root;
}

double winsor_moment(const TwoPointDistribution& dist, double c) {
    require_positive(c, "winsor_moment: c must be positive");
    const double top = c * std::min(1.0, dist.b);
    if (top > detail::kMaxExpArgument) {
        throw Overflow("winsor_moment: e^(c min(1, b)) overflows");
    }
    const double value = dist.p_pos * std::exp(top) + dist.p_neg * std::exp(-c * dist.a);
    if (!std::isfinite(value)) {
        throw Overflow("winsor_moment: result overflows");
    }
    return value;
}

double log_two_point_min_over_c(double a, double sigma) {
    const double s2 = squared_sigma(sigma);
    detail::require(a > 0.0 && a < s2, "two_point_min_over_c: requires 0 < a < sigma^2");
    return std::log(a) + std::log1p(a) - detail::log_ratio(a, s2) / (1.0 + a) -
           std::log(a * a + s2);
}

double two_point_min_over_c(double a, double sigma) {
    return std::exp(log_two_point_min_over_c(a, sigma));
}

double optimal_c_for_two_point(double a, double sigma) {
    const double s2 = squared_sigma(sigma);
    detail::require(a > 0.0 && a < s2, "optimal_c_for_two_point: requires 0 < a < sigma^2");
    return -detail::log_ratio(a, s2) / (1.0 + a);
}

WinsorSolution lower_bound_fixed_c(const BoundQuery& query, const RootTolerances& tol) {
    const BoundQuery q = query.normalized();
    const double a = solve_a_c_sigma(q.c, q.sigma, tol);
    const double b = q.sigma * q.sigma / a;
    const TwoPointDistribution extremal = TwoPointDistribution::make(a, b);
    return WinsorSolution{query, a, b, winsor_moment(extremal, q.c), extremal};
}

UniversalWinsorSolution lower_bound_universal(double sigma, double cut, const RootTolerances& tol) {
    require_positive(sigma, "sigma must be positive and finite");
    require_positive(cut, "cut level must be positive and finite");
    const double s = sigma / cut;
    const double a = solve_a_sigma(s, tol);
    const double b = s * s / a;

    UniversalWinsorSolution sol;
    sol.sigma = sigma;
    sol.cut = cut;
    sol.a_sigma = a;
    sol.b_sigma = b;
    sol.c_sigma = optimal_c_for_two_point(a, s);
    sol.bound = two_point_min_over_c(a, s);
    sol.extremal = TwoPointDistribution::make(a, b);
    return sol;
}

}  // namespace wbounds
