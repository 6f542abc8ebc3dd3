#include "wbounds/asymptotics.hpp"

#include "wbounds/errors.hpp"

#include <cmath>

namespace wbounds {

double f_of_t(double t) {
    detail::require(t > 0.0 && std::isfinite(t), "f_of_t: t must be positive");
    return std::log(t) + 2.0 * (1.0 - t);
}

AsymptoticConstants solve_t_star(const RootTolerances& tol) {
    // f is positive at 1/2 and tends to -inf at 0+; f(1) = 0 is the other
    // root, so the search only moves downward.
    const ProbeLimits limits{1e-6, 1.0 - 1e-6};
    const Bracket bracket = find_bracket(f_of_t, 0.5, SearchDirection::Downward, limits);
    const double t = solve_root(f_of_t, bracket, tol).root;

    AsymptoticConstants k;
    k.t_star = t;
    k.minus_ln_t_star = -std::log(t);
    k.small_sigma_universal_slope = -(1.0 - t) * t;
    k.large_sigma_universal_coeff = std::exp(2.0);
    return k;
}

const AsymptoticConstants& asymptotic_constants() {
    static const AsymptoticConstants constants = solve_t_star();
    return constants;
}

double winsor_small_sigma_slope(double c) {
    detail::require(c > 0.0 && std::isfinite(c), "winsor_small_sigma_slope: c must be positive");
    return -c * c / (4.0 * std::expm1(c));
}

double winsor_large_sigma_coeff(double c) {
    detail::require(c > 0.0 && std::isfinite(c), "winsor_large_sigma_coeff: c must be positive");
    return 4.0 * std::exp(c) / (c * c);
}

namespace {

double log_ratio_term(double sigma) {
    const double l = std::log(sigma);
    return l * l / (sigma * sigma);
}

void require_c_sigma(double c, double sigma) {
    detail::require(c > 0.0 && std::isfinite(c), "asymptote: c must be positive");
    detail::require(sigma > 0.0 && std::isfinite(sigma), "asymptote: sigma must be positive");
}

}  // namespace

double winsor_asymptote(double c, double sigma, SigmaRegime regime) {
    require_c_sigma(c, sigma);
    if (regime == SigmaRegime::Small) {
        return 1.0 + winsor_small_sigma_slope(c) * sigma * sigma;
    }
    return winsor_large_sigma_coeff(c) * log_ratio_term(sigma);
}

double trunc_asymptote(double c, double sigma, SigmaRegime regime) {
    require_c_sigma(c, sigma);
    if (regime == SigmaRegime::Small) {
        return 1.0 - c * sigma * sigma;
    }
    return 4.0 / (c * c) * log_ratio_term(sigma);
}

double universal_asymptote(double sigma, SigmaRegime regime) {
    detail::require(sigma > 0.0 && std::isfinite(sigma), "universal_asymptote: sigma must be positive");
    const AsymptoticConstants& k = asymptotic_constants();
    if (regime == SigmaRegime::Small) {
        return 1.0 + k.small_sigma_universal_slope * sigma * sigma;
    }
    return k.large_sigma_universal_coeff * log_ratio_term(sigma);
}

}  // namespace wbounds
