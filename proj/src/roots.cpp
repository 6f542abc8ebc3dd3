#include "wbounds/roots.hpp"

#include "wbounds/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace wbounds {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double checked_eval(const ScalarFunction& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v)) {
        throw NonFinite("function returned a non-finite value at x = " + std::to_string(x));
    }
    return v;
}

struct Probe {
    double x;
    double fx;
};

bool opposite(double u, double v) { return (u < 0.0) != (v < 0.0); }

}  // namespace

Bracket find_bracket(const ScalarFunction& f, double seed, SearchDirection direction,
                     ProbeLimits limits) {
    detail::require(std::isfinite(seed) && seed > 0.0, "find_bracket: seed must be positive and finite");
    detail::require(limits.lower >= 0.0 && limits.lower < limits.upper,
                    "find_bracket: probe limits must satisfy 0 <= lower < upper");
    detail::require(seed >= limits.lower && seed <= limits.upper,
                    "find_bracket: seed lies outside the probe limits");

    // Nonzero probes in ascending x; new probes are always outermost, so the
    // sign change (if any) is against the current front or back.
    std::deque<Probe> probes;
    if (const double v = checked_eval(f, seed); v != 0.0) {
        probes.push_back({seed, v});
    }

    bool up = direction != SearchDirection::Downward && seed < limits.upper;
    bool down = direction != SearchDirection::Upward && seed > limits.lower;
    double x_up = seed;
    double x_down = seed;

    for (std::size_t step = 0; step < kMaxBracketSteps && (up || down); ++step) {
        if (up) {
            x_up = std::min(2.0 * x_up, limits.upper);
            up = x_up < limits.upper;
            const double v = checked_eval(f, x_up);
            if (v != 0.0) {
                if (!probes.empty() && opposite(probes.back().fx, v)) {
                    return Bracket{probes.back().x, x_up, probes.back().fx, v};
                }
                probes.push_back({x_up, v});
            }
        }
        if (down) {
            x_down = std::max(0.5 * x_down, limits.lower);
            down = x_down > limits.lower;
            if (x_down <= 0.0) {
                break;
            }
            const double v = checked_eval(f, x_down);
            if (v != 0.0) {
                if (!probes.empty() && opposite(probes.front().fx, v)) {
                    return Bracket{x_down, probes.front().x, v, probes.front().fx};
                }
                probes.push_front({x_down, v});
            }
        }
    }
    throw NoSignChange("find_bracket: no sign change found from seed " + std::to_string(seed));
}

RootResult solve_root(const ScalarFunction& f, const Bracket& bracket, const RootTolerances& tol) {
    detail::require(bracket.valid(), "solve_root: bracket must have lo < hi and f_lo * f_hi < 0");
    detail::require(tol.abs_tol > 0.0 && tol.rel_tol > 0.0, "solve_root: tolerances must be positive");

    double a = bracket.lo;
    double b = bracket.hi;
    double fa = bracket.f_lo;
    double fb = bracket.f_hi;
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;

    for (std::size_t iter = 1; iter <= kMaxRootIterations; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 =
            std::max(0.5 * std::max(tol.abs_tol, tol.rel_tol * std::abs(b)), 2.0 * kEps * std::abs(b));
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) {
            return RootResult{b, fb, iter, true};
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p = 0.0;
            double q = 0.0;
            if (a == c) {
                // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            }
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = checked_eval(f, b);
    }
    throw MaxIterations("solve_root: no convergence within " + std::to_string(kMaxRootIterations) +
                        " iterations");
}

RootResult solve_positive_root(const ScalarFunction& f, const Bracket& bracket, const RootTolerances& tol) {
    detail::require(bracket.valid() && bracket.lo > 0.0,
                    "solve_positive_root: bracket must be valid and lie in (0, inf)");
    const ScalarFunction g = [&f](double u) { return f(std::exp(u)); };
    const double u_lo = std::log(bracket.lo);
    const double u_hi = std::log(bracket.hi);
    const Bracket log_bracket{u_lo, u_hi, checked_eval(g, u_lo), checked_eval(g, u_hi)};
    if (!log_bracket.valid()) {
        // exp(log(x)) moved an endpoint across the root; fall back to x itself.
        return solve_root(f, bracket, tol);
    }
    RootResult r = solve_root(g, log_bracket, tol);
    r.root = std::clamp(std::exp(r.root), bracket.lo, bracket.hi);
    r.residual = f(r.root);
    return r;
}

RootResult solve_positive_root(const ScalarFunction& f, double seed, SearchDirection direction,
                               ProbeLimits limits, const RootTolerances& tol) {
    return solve_positive_root(f, find_bracket(f, seed, direction, limits), tol);
}

}  // namespace wbounds
