#pragma once

#include <cstddef>
#include <functional>
#include <limits>

namespace wbounds {

using ScalarFunction = std::function<double(double)>;

/// Interval [lo, hi] with f(lo) and f(hi) of strictly opposite signs.
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double f_lo = 0.0;
    double f_hi = 0.0;

    [[nodiscard]] double width() const { return hi - lo; }
    [[nodiscard]] bool valid() const { return lo < hi && f_lo * f_hi < 0.0; }
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;  ///< f(root)
    std::size_t iterations = 0;
    /// Final bracket width <= max(abs_tol, rel_tol * |root|) (or f(root) == 0).
    bool converged = false;
};

struct RootTolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
};

/// Direction in which find_bracket expands away from the seed.
enum class SearchDirection { Outward, Upward, Downward };

/// Closed probe range for find_bracket. Probes are clamped to it, and a
/// direction stops expanding once it has probed its limit.
struct ProbeLimits {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
};

inline constexpr std::size_t kMaxBracketSteps = 200;
inline constexpr std::size_t kMaxRootIterations = 200;

/// Brackets a sign change of f on (0, inf) by geometric expansion from seed:
/// upward probes double, downward probes halve. Probes where f is exactly
/// zero carry no sign and are skipped.
///
/// Throws NoSignChange after kMaxBracketSteps steps (or when both directions
/// hit their limits), NonFinite if f returns inf/nan at a probe, and
/// ValidationError for a non-positive or out-of-range seed.
Bracket find_bracket(const ScalarFunction& f, double seed,
                     SearchDirection direction = SearchDirection::Outward,
                     ProbeLimits limits = {});

/// Brent's method: bisection safeguarding inverse quadratic and secant
/// steps. The result always lies inside the initial bracket. Deterministic.
///
/// Throws ValidationError for an invalid bracket or tolerances, NonFinite if
/// f misbehaves inside the bracket, MaxIterations after kMaxRootIterations.
RootResult solve_root(const ScalarFunction& f, const Bracket& bracket,
                      const RootTolerances& tol = {});

/// Root of f on (0, inf) found with the iteration variable u = ln x, so that
/// roots of any magnitude are resolved to relative precision. The bracket is
/// located in x by find_bracket; tolerances apply to u.
RootResult solve_positive_root(const ScalarFunction& f, double seed,
                               SearchDirection direction,
                               ProbeLimits limits,
                               const RootTolerances& tol = {});

/// As above, but starting from a known bracket in x.
RootResult solve_positive_root(const ScalarFunction& f, const Bracket& bracket,
                               const RootTolerances& tol = {});

}  // namespace wbounds
