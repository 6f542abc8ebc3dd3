#include "wbounds/trunc.hpp"

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

}  // namespace

double B_star(double a, double c) {
    detail::require(std::isfinite(a) && a >= 0.0, "B_star: a must be nonnegative");
    require_positive(c, "B_star: c must be positive");
    const double x = a * c;
    if (x > detail::kMaxExpArgument) {
        throw Overflow("B_star: e^(ac) overflows for a = " + std::to_string(a) +
                       ", c = " + std::to_string(c));
    }
    const double value = (2.0 * std::expm1(x) - x) / c;
    if (!std::isfinite(value)) {
        throw Overflow("B_star: result overflows");
    }
    return value;
}

double log_B_star(double a, double c) {
    require_positive(a, "log_B_star: a must be positive");
    require_positive(c, "log_B_star: c must be positive");
    const double x = a * c;
    return detail::log_two_expm1_minus(x, x, c);
}

double solve_A_c(double c, const RootTolerances& tol) {
    require_positive(c, "solve_A_c: c must be positive");
    const auto g = [c](double a) { return log_B_star(a, c); };
    const double lo = 1e-6;
    const double hi = std::max(2.0, 2.0 / c);
    const Bracket initial{lo, hi, g(lo), g(hi)};
    if (initial.valid()) {
        return solve_positive_root(g, initial, tol).root;
    }
    // B* is increasing, so any sign-changing bracket works.
    return solve_positive_root(g, 1.0 / (1.0 + c), SearchDirection::Outward, {}, tol).root;
}

double solve_A_c_sigma(double c, double sigma, const RootTolerances& tol) {
    require_positive(c, "solve_A_c_sigma: c must be positive");
    require_positive(sigma, "solve_A_c_sigma: sigma must be positive");
    const double log_s2 = 2.0 * std::log(sigma);
    const auto g = [c, log_s2](double a) { return std::log(a) + log_B_star(a, c) - log_s2; };
    // a B* ~ a^2 as a -> 0 and ~ (2/c) a e^{ac} as a -> inf.
    double seed = std::min(sigma, detail::log1p_exp(log_s2) / c);
    seed = std::max(seed, std::numeric_limits<double>::min());
    return solve_positive_root(g, seed, SearchDirection::Outward, {}, tol).root;
}

double trunc_moment(const TwoPointDistribution& dist, double c) {
    require_positive(c, "trunc_moment: c must be positive");
    const double t_b = dist.b < 1.0 ? dist.b : 0.0;
    const double value = dist.p_pos * std::exp(c * t_b) + dist.p_neg * std::exp(-c * dist.a);
    if (!std::isfinite(value)) {
        throw NonFinite("trunc_moment: non-finite result");
    }
    return value;
}

TruncSolution lower_bound_trunc_branch(const BoundQuery& query, TruncBranch branch,
                                       const RootTolerances& tol) {
    const BoundQuery q = query.normalized();
    const double s2 = q.sigma * q.sigma;

    TruncSolution sol;
    sol.query = query;
    sol.branch = branch;
    sol.A_c = solve_A_c(q.c, tol);
    if (branch == TruncBranch::SmallSigma) {
        sol.extremal = TwoPointDistribution::make(s2, 1.0);
    } else {
        const double a = solve_A_c_sigma(q.c, q.sigma, tol);
        const double b = std::max(1.0, s2 / a);
        sol.A_c_sigma = a;
        sol.B_c_sigma = b;
        sol.extremal = TwoPointDistribution::make(a, b);
    }
    sol.bound = trunc_moment(sol.extremal, q.c);
    return sol;
}

TruncSolution lower_bound_trunc(const BoundQuery& query, const RootTolerances& tol) {
    const BoundQuery q = query.normalized();
    const double A_c = solve_A_c(q.c, tol);
    const TruncBranch branch =
        q.sigma * q.sigma <= A_c ? TruncBranch::SmallSigma : TruncBranch::LargeSigma;
    return lower_bound_trunc_branch(query, branch, tol);
}

const char* to_string(TruncBranch branch) {
    return branch == TruncBranch::SmallSigma ? "small-sigma" : "large-sigma";
}

}  // namespace wbounds
