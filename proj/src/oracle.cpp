#include "wbounds/oracle.hpp"

#include "wbounds/errors.hpp"
#include "wbounds/trunc.hpp"
#include "wbounds/winsor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wbounds {

const char* to_string(MomentKind kind) { return kind == MomentKind::Winsor ? "winsor" : "trunc"; }

double moment_integrand(MomentKind kind, double c, double x) {
    if (x < 1.0) {
        return std::exp(c * x);
    }
    return kind == MomentKind::Winsor ? std::exp(c) : 1.0;
}

namespace {

// F'(x) away from the kink; identical for W and T.
double integrand_slope(double c, double x) { return x < 1.0 ? c * std::exp(c * x) : 0.0; }

void require_positive(double x, const char* what) {
    detail::require(std::isfinite(x) && x > 0.0, what);
}

}  // namespace

// The coefficients are evaluated in long double: for large c, alpha is the
// difference of two terms of size e^c and loses ~log10(e^c) digits in double.

QuadraticMinorant winsor_minorant(double a, double c) {
    require_positive(a, "winsor_minorant: a must be positive");
    require_positive(c, "winsor_minorant: c must be positive");
    (void)b_star(a, c);  // overflow check

    const long double al = a;
    const long double cl = c;
    const long double b = (2.0L * std::expm1(cl + al * cl) - al * cl) / cl;
    const long double e = std::exp(-al * cl);
    const long double s = al + b;

    QuadraticMinorant g;
    g.alpha = static_cast<double>(std::exp(cl) - b * b * cl * e / (2.0L * s));
    g.beta = static_cast<double>(b * cl * e / s);
    g.gamma = static_cast<double>(-cl * e / (2.0L * s));
    g.contact_points = {-a, static_cast<double>(b)};
    return g;
}

QuadraticMinorant trunc_minorant_small(double a, double c, const RootTolerances& tol) {
    require_positive(a, "trunc_minorant_small: a must be positive");
    require_positive(c, "trunc_minorant_small: c must be positive");
    const double A_c = solve_A_c(c, tol);
    if (a > A_c * (1.0 + 1e-12)) {
        throw CaseViolation("trunc_minorant_small: requires a <= A_c (a = " + std::to_string(a) +
                            ", A_c = " + std::to_string(A_c) + ")");
    }

    const long double al = a;
    const long double cl = c;
    const long double ac = al * cl;
    const long double e = std::exp(-ac);
    const long double em1 = std::expm1(ac);
    const long double d = (al + 1.0L) * (al + 1.0L);

    QuadraticMinorant g;
    g.alpha = static_cast<double>((al * al + e * (cl * al * al + ac + 2.0L * al + 1.0L)) / d);
    g.beta = static_cast<double>(e * (2.0L * al * em1 + cl * (1.0L - al * al)) / d);
    g.gamma = static_cast<double>(e * (em1 - ac - cl) / d);
    g.contact_points = {-a, 1.0};
    g.tangent_at_upper = false;
    return g;
}

QuadraticMinorant trunc_minorant_large(double a, double c) {
    require_positive(a, "trunc_minorant_large: a must be positive");
    require_positive(c, "trunc_minorant_large: c must be positive");
    const double b_check = B_star(a, c);
    if (b_check < 1.0 - 1e-12) {
        throw CaseViolation("trunc_minorant_large: requires B*_{a,c} >= 1 (got " +
                            std::to_string(b_check) + ")");
    }

    const long double al = a;
    const long double cl = c;
    const long double b = std::max(1.0L, (2.0L * std::expm1(al * cl) - al * cl) / cl);
    const long double e = std::exp(-al * cl);
    const long double s = al + b;

    QuadraticMinorant g;
    g.alpha = static_cast<double>(
        e * (cl * al * al + 2.0L * al * b * cl + 2.0L * al + 2.0L * b) / (2.0L * s));
    g.beta = static_cast<double>(cl * b * e / s);
    g.gamma = static_cast<double>(-cl * e / (2.0L * s));
    g.contact_points = {-a, static_cast<double>(b)};
    return g;
}

namespace {

struct Gap {
    const QuadraticMinorant& g;
    MomentKind kind;
    double c;

    double operator()(double x) const { return moment_integrand(kind, c, x) - g(x); }
};

// D'(x0) by central differences, or second-order one-sided differences when
// the stencil would straddle the kink at x = 1.
double gap_slope(const Gap& d, double x0) {
    const double h = 1e-6 * std::max(1.0, std::abs(x0));
    if (x0 >= 1.0) {
        if (x0 - h < 1.0) {
            return (-3.0 * d(x0) + 4.0 * d(x0 + h) - d(x0 + 2.0 * h)) / (2.0 * h);
        }
    } else if (x0 + h >= 1.0) {
        return (3.0 * d(x0) - 4.0 * d(x0 - h) + d(x0 - 2.0 * h)) / (2.0 * h);
    }
    return (d(x0 + h) - d(x0 - h)) / (2.0 * h);
}

void append_uniform(std::vector<double>& xs, double lo, double hi, std::size_t n) {
    if (n < 2) {
        xs.push_back(0.5 * (lo + hi));
        return;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(i + 1 == n ? hi : lo + step * static_cast<double>(i));
    }
}

}  // namespace

CertificateReport check_certificate(const QuadraticMinorant& minorant, MomentKind kind, double c,
                                    const CertificateGrid& grid) {
    require_positive(c, "check_certificate: c must be positive");
    const auto [x_lo, x_hi] = minorant.contact_points;
    const Gap gap{minorant, kind, c};

    CertificateReport report;
    std::ostringstream why;

    report.sign_conditions = minorant.beta > 0.0 && minorant.gamma < 0.0;
    if (!report.sign_conditions) {
        why << "sign conditions beta > 0 > gamma fail; ";
    }

    const double half_width = grid.half_width > 0.0
                                  ? grid.half_width
                                  : 10.0 * std::max({1.0, std::abs(x_lo), std::abs(x_hi)});
    std::vector<double> xs;
    xs.reserve(grid.points + 3 * grid.refine_points);
    append_uniform(xs, -half_width, half_width, grid.points);
    for (const double centre : {x_lo, x_hi, 1.0}) {
        append_uniform(xs, centre - grid.refine_radius, centre + grid.refine_radius, grid.refine_points);
    }

    const auto near_contact = [&](double x) {
        return std::abs(x - x_lo) <= 1e-3 * std::max(1.0, std::abs(x_lo)) ||
               std::abs(x - x_hi) <= 1e-3 * std::max(1.0, std::abs(x_hi));
    };

    report.worst_violation = std::numeric_limits<double>::infinity();
    report.equality_only_at_contacts = true;
    for (const double x : xs) {
        const double f = moment_integrand(kind, c, x);
        const double rel = (f - minorant(x)) / std::max(1.0, f);
        if (rel < report.worst_violation) {
            report.worst_violation = rel;
            report.worst_x = x;
        }
        if (rel <= kMinorantViolationTol && !near_contact(x)) {
            report.equality_only_at_contacts = false;
        }
    }
    report.points_checked = xs.size();
    if (report.worst_violation < -kMinorantViolationTol) {
        why << "G exceeds F at x = " << report.worst_x << " (relative " << report.worst_violation << "); ";
    }
    if (!report.equality_only_at_contacts) {
        why << "F = G away from the contact points; ";
    }

    for (const double x0 : {x_lo, x_hi}) {
        const double f = moment_integrand(kind, c, x0);
        report.max_contact_gap = std::max(report.max_contact_gap, std::abs(gap(x0)) / std::max(1.0, f));
    }
    if (report.max_contact_gap > kContactTol) {
        why << "no contact at a support point (gap " << report.max_contact_gap << "); ";
    }

    const auto slope_scale = [&](double x0) {
        return std::max({std::abs(integrand_slope(c, x0)), std::abs(minorant.beta),
                         std::abs(2.0 * minorant.gamma * x0), std::numeric_limits<double>::min()});
    };
    report.max_tangency_error = std::abs(gap_slope(gap, x_lo)) / slope_scale(x_lo);
    if (minorant.tangent_at_upper) {
        report.max_tangency_error =
            std::max(report.max_tangency_error, std::abs(gap_slope(gap, x_hi)) / slope_scale(x_hi));
    } else {
        // Only D'(1+) >= 0 is required at the kink.
        const double right = gap_slope(gap, std::max(x_hi, 1.0)) / slope_scale(x_hi);
        if (right < -kTangencyTol) {
            why << "right derivative of F - G at the kink is negative; ";
            report.max_tangency_error = std::max(report.max_tangency_error, -right);
        }
    }
    if (report.max_tangency_error > kTangencyTol) {
        why << "F - G not tangent at a support point (error " << report.max_tangency_error << "); ";
    }

    report.failure = why.str();
    report.passed = report.failure.empty();
    return report;
}

namespace {

double two_point_moment(MomentKind kind, double c, double a, double s2) {
    const TwoPointDistribution d = TwoPointDistribution::make(a, s2 / a);
    return kind == MomentKind::Winsor ? winsor_moment(d, c) : trunc_moment(d, c);
}

std::vector<double> log_nodes(double lo, double hi, std::size_t n) {
    std::vector<double> xs;
    xs.reserve(n + 1);
    const double l0 = std::log(lo);
    const double step = (std::log(hi) - l0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(i == 0 ? lo : i + 1 == n ? hi : std::exp(l0 + step * static_cast<double>(i)));
    }
    return xs;
}

void insert_node(std::vector<double>& xs, double node) {
    if (node > xs.front() && node < xs.back()) {
        xs.insert(std::lower_bound(xs.begin(), xs.end(), node), node);
    }
}

void require_grid(const LogGrid& g, const char* what) {
    detail::require(g.lo > 0.0 && g.hi > g.lo && g.points >= 2 && std::isfinite(g.hi), what);
}

struct Candidate {
    double value = std::numeric_limits<double>::infinity();
    double a = 0.0;
    double c = 0.0;

    // Deterministic reduction: value, then smaller a, then smaller c.
    void offer(double v, double a_, double c_) {
        if (v < value || (v == value && (a_ < a || (a_ == a && c_ < c)))) {
            value = v;
            a = a_;
            c = c_;
        }
    }
};

}  // namespace

LogGrid default_a_grid(double c, double sigma, std::size_t points) {
    require_positive(c, "default_a_grid: c must be positive");
    require_positive(sigma, "default_a_grid: sigma must be positive");
    const double s2 = sigma * sigma;
    return LogGrid{1e-6 * std::min(1.0, s2) / std::max(1.0, c), std::max(1e2, 2.0 * s2), points};
}

GridMinResult grid_min_two_point(double c, double sigma, MomentKind kind, const LogGrid& a_grid,
                                 std::size_t refine_points) {
    require_positive(c, "grid_min_two_point: c must be positive");
    require_positive(sigma, "grid_min_two_point: sigma must be positive");
    require_grid(a_grid, "grid_min_two_point: invalid a grid");
    detail::require(refine_points >= 2, "grid_min_two_point: refine_points must be >= 2");
    const double s2 = sigma * sigma;

    std::vector<double> coarse = log_nodes(a_grid.lo, a_grid.hi, a_grid.points);
    if (kind == MomentKind::Trunc) {
        insert_node(coarse, s2);
    }
    Candidate best;
    for (const double a : coarse) {
        best.offer(two_point_moment(kind, c, a, s2), a, c);
    }

    const double cell = (std::log(a_grid.hi) - std::log(a_grid.lo)) / static_cast<double>(a_grid.points - 1);
    const double lo = std::max(a_grid.lo, best.a * std::exp(-2.0 * cell));
    const double hi = std::min(a_grid.hi, best.a * std::exp(2.0 * cell));
    std::vector<double> fine = log_nodes(lo, hi, refine_points);
    if (kind == MomentKind::Trunc) {
        insert_node(fine, s2);
    }
    for (const double a : fine) {
        best.offer(two_point_moment(kind, c, a, s2), a, c);
    }

    GridMinResult r;
    r.a = best.a;
    r.b = s2 / best.a;
    r.c = c;
    r.min_value = best.value;
    r.a_cell_log_width = (std::log(hi) - std::log(lo)) / static_cast<double>(refine_points - 1);
    std::ostringstream spec;
    spec << to_string(kind) << " a in [" << a_grid.lo << ", " << a_grid.hi << "] x " << a_grid.points
         << " log points, refined x " << refine_points << " in [" << lo << ", " << hi << "]";
    r.grid_spec = spec.str();
    return r;
}

GridMinResult grid_min_universal(double sigma, const LogGrid& a_grid, const LogGrid& c_grid,
                                 std::size_t refine_points) {
    require_positive(sigma, "grid_min_universal: sigma must be positive");
    require_grid(a_grid, "grid_min_universal: invalid a grid");
    require_grid(c_grid, "grid_min_universal: invalid c grid");
    detail::require(refine_points >= 2, "grid_min_universal: refine_points must be >= 2");
    const double s2 = sigma * sigma;

    const auto search = [&](const std::vector<double>& as, const std::vector<double>& cs) {
        Candidate best;
        for (const double a : as) {
            const TwoPointDistribution d = TwoPointDistribution::make(a, s2 / a);
            for (const double c : cs) {
                best.offer(winsor_moment(d, c), a, c);
            }
        }
        return best;
    };

    const Candidate coarse =
        search(log_nodes(a_grid.lo, a_grid.hi, a_grid.points), log_nodes(c_grid.lo, c_grid.hi, c_grid.points));

    const auto window = [](const LogGrid& g, double centre) {
        const double cell = (std::log(g.hi) - std::log(g.lo)) / static_cast<double>(g.points - 1);
        return std::pair{std::max(g.lo, centre * std::exp(-2.0 * cell)),
                         std::min(g.hi, centre * std::exp(2.0 * cell))};
    };
    const auto [a_lo, a_hi] = window(a_grid, coarse.a);
    const auto [c_lo, c_hi] = window(c_grid, coarse.c);
    const Candidate best =
        search(log_nodes(a_lo, a_hi, refine_points), log_nodes(c_lo, c_hi, refine_points));

    GridMinResult r;
    r.a = best.a;
    r.b = s2 / best.a;
    r.c = best.c;
    r.min_value = best.value;
    r.a_cell_log_width = (std::log(a_hi) - std::log(a_lo)) / static_cast<double>(refine_points - 1);
    r.c_cell_log_width = (std::log(c_hi) - std::log(c_lo)) / static_cast<double>(refine_points - 1);
    std::ostringstream spec;
    spec << "winsor joint a in [" << a_grid.lo << ", " << a_grid.hi << "] x " << a_grid.points << ", c in ["
         << c_grid.lo << ", " << c_grid.hi << "] x " << c_grid.points << ", refined " << refine_points
         << "^2";
    r.grid_spec = spec.str();
    return r;
}

double ThreePointLaw::mean() const { return p[0] * x[0] + p[1] * x[1] + p[2] * x[2]; }

double ThreePointLaw::second_moment() const {
    return p[0] * x[0] * x[0] + p[1] * x[1] * x[1] + p[2] * x[2] * x[2];
}

double ThreePointLaw::moment(MomentKind kind, double c) const {
    double total = 0.0;
    for (int i = 0; i < 3; ++i) {
        total += p[i] * moment_integrand(kind, c, x[i]);
    }
    return total;
}

ThreePointSampler::ThreePointSampler(double sigma, std::uint64_t seed) : sigma_(sigma), rng_(seed) {
    require_positive(sigma, "ThreePointSampler: sigma must be positive");
}

ThreePointLaw ThreePointSampler::next() {
    const double lo = std::log(1e-3 * std::min(1.0, sigma_));
    const double hi = std::log(10.0 * std::max(1.0, sigma_));
    for (;;) {
        ThreePointLaw law{};
        double weight_sum = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double magnitude = std::exp(lo + (hi - lo) * uniform());
            law.x[i] = uniform() < 0.5 ? -magnitude : magnitude;
            law.p[i] = -std::log1p(-uniform());  // Dirichlet(1, 1, 1) via exponentials
            weight_sum += law.p[i];
        }
        if (!(weight_sum > 0.0)) {
            continue;
        }
        for (double& p : law.p) {
            p /= weight_sum;
        }
        const double m = law.mean();
        for (double& x : law.x) {
            x -= m;
        }
        const double m2 = law.second_moment();
        if (!(m2 > 0.0)) {
            continue;
        }
        // E X^2 = v sigma^2, then an optional shift keeps E X >= 0 and E X^2 <= sigma^2.
        const double v = 1.0 - uniform();
        const double scale = sigma_ * std::sqrt(v / m2);
        const double shift = uniform() < 0.5 ? sigma_ * uniform() * std::sqrt(1.0 - v) : 0.0;
        for (double& x : law.x) {
            x = x * scale + shift;
        }
        return law;
    }
}

ProbeReport three_point_probe(MomentKind kind, double c, double sigma, double bound, std::size_t samples,
                              std::uint64_t seed) {
    require_positive(c, "three_point_probe: c must be positive");
    require_positive(bound, "three_point_probe: bound must be positive");
    ThreePointSampler sampler(sigma, seed);
    ProbeReport report;
    report.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < samples; ++i) {
        const double value = sampler.next().moment(kind, c);
        const double margin = value / bound - 1.0;
        report.worst_margin = std::min(report.worst_margin, margin);
        if (value < bound * (1.0 - 1e-12)) {
            ++report.violations;
        }
    }
    report.samples = samples;
    return report;
}

std::vector<CollapseRow> trunc_collapse_sequence(double sigma, const std::vector<double>& a_values) {
    require_positive(sigma, "trunc_collapse_sequence: sigma must be positive");
    const double s2 = sigma * sigma;
    std::vector<CollapseRow> rows;
    rows.reserve(a_values.size());
    for (std::size_t i = 0; i < a_values.size(); ++i) {
        const double a = a_values[i];
        require_positive(a, "trunc_collapse_sequence: a values must be positive");
        detail::require(i == 0 || a < a_values[i - 1], "trunc_collapse_sequence: a values must decrease");
        CollapseRow row;
        row.a = a;
        row.b = s2 / a;
        row.c = 1.0 / (a * a);
        row.trunc_moment = trunc_moment(TwoPointDistribution::make(row.a, row.b), row.c);
        row.winsor_min_over_c = a < s2 ? two_point_min_over_c(a, sigma) : 1.0;
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> collapse_a_values(std::size_t steps) {
    constexpr double kMantissa[3] = {5.0, 2.0, 1.0};
    std::vector<double> as;
    as.reserve(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        as.push_back(kMantissa[k % 3] * std::pow(10.0, -1.0 - static_cast<double>(k / 3)));
    }
    return as;
}

}  // namespace wbounds
