#pragma once

#include "wbounds/roots.hpp"
#include "wbounds/two_point.hpp"

#include <optional>

namespace wbounds {

// Exact lower bound on E exp{c T(X)}, T(x) = x 1{x < 1}, over all X with
// E X >= 0 and E X^2 <= sigma^2. The extremal law switches at sigma^2 = A_c
// from X_{sigma^2, 1} to X_{A_{c,sigma}, B_{c,sigma}}.

enum class TruncBranch { SmallSigma, LargeSigma };

/// All fields except `query` are at cut level 1 (see BoundQuery::normalized).
/// A_c_sigma and B_c_sigma are present only on the LargeSigma branch.
struct TruncSolution {
    BoundQuery query;
    TruncBranch branch = TruncBranch::SmallSigma;
    double A_c = 0.0;
    std::optional<double> A_c_sigma;
    std::optional<double> B_c_sigma;
    double bound = 0.0;
    TwoPointDistribution extremal;
};

/// B*_{a,c} = (2(e^{ac} - 1) - ac) / c. Throws Overflow for extreme ac.
double B_star(double a, double c);

/// ln B*_{a,c} for a > 0, c > 0, without overflow.
double log_B_star(double a, double c);

/// The unique a > 0 with B*_{a,c} = 1.
double solve_A_c(double c, const RootTolerances& tol = {});

/// The unique a > 0 with a B*_{a,c} = sigma^2, solved in log form.
double solve_A_c_sigma(double c, double sigma, const RootTolerances& tol = {});

/// E exp{c T(X)} for a two-point law; T(b) = 0 for b >= 1.
double trunc_moment(const TwoPointDistribution& dist, double c);

/// L_{T;c,sigma}. The tie sigma^2 == A_c takes the SmallSigma branch.
TruncSolution lower_bound_trunc(const BoundQuery& query, const RootTolerances& tol = {});

/// Evaluates the given branch's formula regardless of which branch the
/// query falls in; used to check continuity at sigma^2 = A_c. On the
/// LargeSigma branch B_{c,sigma} is floored at 1, its proven lower bound.
TruncSolution lower_bound_trunc_branch(const BoundQuery& query, TruncBranch branch,
                                       const RootTolerances& tol = {});

const char* to_string(TruncBranch branch);

}  // namespace wbounds
