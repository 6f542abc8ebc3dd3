#pragma once

// Independent verification of the Winsorization and truncation bounds:
// quadratic-minorant certificates from the duality argument, brute-force
// minimization over two-point laws, random three-point probes, and the
// truncation collapse construction.
//
// These routines provide evidence on finite candidate families; they are
// not a proof of the distributional strictness statements.

#include "wbounds/roots.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace wbounds {

enum class MomentKind { Winsor, Trunc };

const char* to_string(MomentKind kind);

/// F(x) = exp{c W(x)} or exp{c T(x)}.
double moment_integrand(MomentKind kind, double c, double x);

/// G(x) = alpha + beta x + gamma x^2, touching F at both contact points.
struct QuadraticMinorant {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    std::pair<double, double> contact_points{0.0, 0.0};
    /// False when the upper contact is the kink x = 1 and only D(1) = 0,
    /// D'(1+) >= 0 hold (small-sigma truncation case).
    bool tangent_at_upper = true;

    [[nodiscard]] double operator()(double x) const { return alpha + x * (beta + gamma * x); }
    [[nodiscard]] double derivative(double x) const { return beta + 2.0 * gamma * x; }
};

/// Winsorization certificate with b = b*_{a,c}; contacts (-a, b).
QuadraticMinorant winsor_minorant(double a, double c);

/// Truncation certificate for sigma^2 = a <= A_c; contacts (-a, 1).
/// Throws CaseViolation if a > A_c.
QuadraticMinorant trunc_minorant_small(double a, double c, const RootTolerances& tol = {});

/// Truncation certificate for sigma^2 >= A_c with b = B*_{a,c}; contacts
/// (-a, b). Throws CaseViolation if B*_{a,c} < 1.
QuadraticMinorant trunc_minorant_large(double a, double c);

struct CertificateGrid {
    /// Coarse grid covers [-half_width, half_width]; <= 0 means
    /// 10 * max(1, a, b) from the contact points.
    double half_width = 0.0;
    std::size_t points = 100'001;
    /// Extra points within refine_radius of each contact point and of x = 1.
    double refine_radius = 1e-3;
    std::size_t refine_points = 2'001;
};

struct CertificateReport {
    bool passed = false;
    /// min over the grid of (F - G) / max(1, F); negative means G > F somewhere.
    double worst_violation = 0.0;
    double worst_x = 0.0;
    /// max over contacts of |F - G| / max(1, F).
    double max_contact_gap = 0.0;
    /// max over required tangencies of |D'| / derivative scale.
    double max_tangency_error = 0.0;
    bool sign_conditions = false;
    bool equality_only_at_contacts = false;
    std::size_t points_checked = 0;
    std::string failure;  ///< empty when passed
};

inline constexpr double kMinorantViolationTol = 1e-12;
inline constexpr double kContactTol = 1e-10;
inline constexpr double kTangencyTol = 1e-5;

/// Checks G <= F on the grid (to kMinorantViolationTol * max(1, F)), contact
/// at both points (kContactTol), tangency D' = 0 by finite differences
/// (kTangencyTol; one-sided at the kink x = 1, right derivative >= 0 for the
/// small-sigma truncation contact at 1), beta > 0 > gamma, and that near-zero
/// values of F - G occur only within 1e-3 max(1, |x0|) of a contact x0.
CertificateReport check_certificate(const QuadraticMinorant& minorant, MomentKind kind, double c,
                                    const CertificateGrid& grid = {});

struct LogGrid {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t points = 0;
};

struct GridMinResult {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double min_value = 0.0;
    /// Refined-stage spacing in ln a (and ln c for the joint search).
    double a_cell_log_width = 0.0;
    double c_cell_log_width = 0.0;
    std::string grid_spec;
};

/// A log grid in a wide enough for the two-point roots at (c, sigma).
LogGrid default_a_grid(double c, double sigma, std::size_t points = 10'000);

/// Minimizes the closed-form two-point moment over b = sigma^2 / a with a on
/// the grid, then on refine_points in a +-2 cell window around the coarse
/// argmin. For Trunc the discontinuity a = sigma^2 (b = 1) is a grid node in
/// both stages. Ties break toward smaller a.
GridMinResult grid_min_two_point(double c, double sigma, MomentKind kind, const LogGrid& a_grid,
                                 std::size_t refine_points = 1'000);

/// Joint minimization of E exp{c W(X_{a, sigma^2/a})} over log grids in a
/// and c, two-stage as above. Ties break toward smaller a, then smaller c.
GridMinResult grid_min_universal(double sigma, const LogGrid& a_grid, const LogGrid& c_grid,
                                 std::size_t refine_points = 1'000);

struct ThreePointLaw {
    double x[3];
    double p[3];

    [[nodiscard]] double mean() const;
    [[nodiscard]] double second_moment() const;
    [[nodiscard]] double moment(MomentKind kind, double c) const;
};

/// Random law on three points with E X >= 0 and E X^2 <= sigma^2.
class ThreePointSampler {
public:
    ThreePointSampler(double sigma, std::uint64_t seed);
    ThreePointLaw next();

private:
    double sigma_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};

    double uniform() { return unit_(rng_); }
};

struct ProbeReport {
    std::size_t samples = 0;
    std::size_t violations = 0;
    /// min over samples of moment / bound - 1.
    double worst_margin = 0.0;
};

inline constexpr std::uint64_t kDefaultProbeSeed = 20240611;

/// Draws `samples` laws from ThreePointSampler(sigma, seed) and compares
/// E exp{c K(X)} with `bound`; a violation is moment < bound (1 - 1e-12).
ProbeReport three_point_probe(MomentKind kind, double c, double sigma, double bound,
                              std::size_t samples, std::uint64_t seed = kDefaultProbeSeed);

struct CollapseRow {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double trunc_moment = 0.0;
    /// min over c > 0 of E exp{c W(X_{a,b})}: m(a, sigma) for a < sigma^2,
    /// else 1 (approached as c -> 0).
    double winsor_min_over_c = 0.0;
};

/// For each a: b = sigma^2 / a, c = 1 / a^2, E exp{c T(X_{a,b})}.
std::vector<CollapseRow> trunc_collapse_sequence(double sigma, const std::vector<double>& a_values);

/// 0.5, 0.2, 0.1, 0.05, 0.02, ... (first `steps` terms).
std::vector<double> collapse_a_values(std::size_t steps);

}  // namespace wbounds
