#pragma once

// Overflow-free logarithms shared by the Winsorization and truncation solvers.

#include <cmath>
#include <limits>

namespace wbounds::detail {

inline constexpr double kMaxExpArgument = 709.0;

/// Above this exponent e^{-x} is below 1e-13 and the asymptotic log form is used.
inline constexpr double kLogFormSwitch = 30.0;

/// ln(e^x - 1) for x > 0.
inline double log_expm1(double x) {
    return x > kLogFormSwitch ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x));
}

/// ln((2(e^x - 1) - y) / c) for x > 0 and 0 <= y < 2(e^x - 1). For large x,
/// (2(e^x - 1) - y) / c = (2 e^x / c) (1 - (2 + y) e^{-x} / 2).
inline double log_two_expm1_minus(double x, double y, double c) {
    if (x > kLogFormSwitch) {
        return x + std::log(2.0 / c) + std::log1p(-0.5 * (2.0 + y) * std::exp(-x));
    }
    return std::log((2.0 * std::expm1(x) - y) / c);
}

/// ln(1 + e^x) without overflow.
inline double log1p_exp(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

/// ln(a / s) that survives under/overflow of the quotient.
inline double log_ratio(double a, double s) {
    const double r = a / s;
    if (r > std::numeric_limits<double>::min() && std::isfinite(r)) {
        return std::log(r);
    }
    return std::log(a) - std::log(s);
}

}  // namespace wbounds::detail
