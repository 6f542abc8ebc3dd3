#pragma once

#include "wbounds/roots.hpp"

namespace wbounds {

/// Constants governing the small- and large-sigma behaviour of the
/// universal Winsorization bound. Everything derives from t_star, the root
/// in (0, 1) of f(t) = ln t + 2(1 - t).
struct AsymptoticConstants {
    double t_star = 0.0;
    double minus_ln_t_star = 0.0;              ///< optimal c as sigma -> 0
    double small_sigma_universal_slope = 0.0;  ///< -(1 - t_star) t_star
    double large_sigma_universal_coeff = 0.0;  ///< e^2
};

enum class SigmaRegime { Small, Large };

double f_of_t(double t);

/// Solves f(t) = 0 on (1e-6, 1 - 1e-6) and fills the derived constants.
AsymptoticConstants solve_t_star(const RootTolerances& tol = {});

/// Process-wide constants, computed on first use with default tolerances.
const AsymptoticConstants& asymptotic_constants();

/// -c^2 / (4(e^c - 1)): limit of (L_{W;c,sigma} - 1) / sigma^2 as sigma -> 0.
double winsor_small_sigma_slope(double c);

/// 4 e^c / c^2: limit of L_{W;c,sigma} sigma^2 / ln^2 sigma as sigma -> inf.
double winsor_large_sigma_coeff(double c);

/// Leading-order approximation of L_{W;c,sigma} in the given regime.
double winsor_asymptote(double c, double sigma, SigmaRegime regime);

/// 1 - c sigma^2 (Small) or (4 / c^2) ln^2 sigma / sigma^2 (Large).
double trunc_asymptote(double c, double sigma, SigmaRegime regime);

/// 1 - (1 - t_star) t_star sigma^2 (Small) or e^2 ln^2 sigma / sigma^2 (Large).
double universal_asymptote(double sigma, SigmaRegime regime);

}  // namespace wbounds
