#include "wbounds/verify.hpp"

#include "wbounds/asymptotics.hpp"
#include "wbounds/errors.hpp"
#include "wbounds/trunc.hpp"
#include "wbounds/winsor.hpp"

#include <boost/math/tools/minima.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace wbounds {

const char* to_string(Suite suite) {
    switch (suite) {
        case Suite::Roots: return "roots";
        case Suite::Ordering: return "ordering";
        case Suite::Certificates: return "certificates";
        case Suite::Oracle: return "oracle";
        case Suite::Asymptotics: return "asymptotics";
        case Suite::All: return "all";
    }
    return "?";
}

Suite parse_suite(const std::string& text) {
    for (const Suite s : {Suite::Roots, Suite::Ordering, Suite::Certificates, Suite::Oracle, Suite::Asymptotics,
                          Suite::All}) {
        if (text == to_string(s)) return s;
    }
    throw ValidationError("unknown suite '" + text +
                          "' (expected roots, ordering, certificates, oracle, asymptotics or all)");
}

const std::vector<double>& test_c_values() {
    static const std::vector<double> cs{0.5, 1.0, 1.5, 2.0, 3.0, 5.0};
    return cs;
}

const std::vector<double>& certificate_sigma_values() {
    static const std::vector<double> ss{0.05, 0.1, 0.3, 0.5, 0.7, 1.0, 2.0, 3.0, 10.0, 100.0, 1e3, 1e4};
    return ss;
}

const std::vector<std::pair<double, double>>& representative_pairs() {
    static const std::vector<std::pair<double, double>> pairs{
        {0.5, 0.1}, {1.0, 0.5}, {1.0, 1.0}, {2.0, 1.0}, {1.5, 3.0},
        {3.0, 10.0}, {5.0, 0.3}, {0.5, 100.0}, {2.0, 1e3},
    };
    return pairs;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    detail::require(lo > 0.0 && hi > lo && n >= 2, "logspace: requires 0 < lo < hi and n >= 2");
    std::vector<double> xs(n);
    const double l0 = std::log(lo);
    const double step = (std::log(hi) - l0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) xs[i] = std::exp(l0 + step * static_cast<double>(i));
    xs.front() = lo;
    xs.back() = hi;
    return xs;
}

namespace {

// Tracks the largest value of a nonnegative "badness" metric and where it occurred.
struct Worst {
    double value = 0.0;
    std::string where;
    bool ok = true;

    void see(double v, const std::string& at) {
        if (where.empty() || !(v <= value)) {
            value = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
            where = at;
        }
    }
    void fail(const std::string& at) {
        ok = false;
        if (where.empty()) where = at;
    }
};

CheckOutcome max_check(std::string name, const Worst& w, double tol, const std::string& unit = "") {
    CheckOutcome o;
    o.name = std::move(name);
    o.worst = w.value;
    o.passed = w.ok && w.value <= tol;
    o.detail = fmt::format("tol={:g}{}{}", tol, unit, w.where.empty() ? "" : " at " + w.where);
    return o;
}

CheckOutcome flag_check(std::string name, bool passed, double worst, std::string detail) {
    return CheckOutcome{std::move(name), passed, worst, std::move(detail)};
}

// Runs `body`, turning a thrown library error into a failed outcome.
void guarded(std::vector<CheckOutcome>& out, const std::string& name, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        out.push_back(flag_check(name, false, std::numeric_limits<double>::infinity(),
                                 std::string("error: ") + e.what()));
    }
}

double rel_diff(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

std::string at_cs(double c, double s) { return fmt::format("c={:g} sigma={:g}", c, s); }

// Floors to three decimals, e.g. 0.87813 -> 0.878.
double three_decimals(double x) { return std::floor(x * 1000.0) / 1000.0; }

const std::vector<double> kRootCValues{0.1, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0};

}  // namespace

std::vector<CheckOutcome> verify_roots(const VerifyOptions& opts) {
    std::vector<CheckOutcome> out;
    const auto& tol = opts.tol;
    const std::vector<double> sigmas = logspace(1e-3, 1e6, 40);

    guarded(out, "t_star residual", [&] {
        const AsymptoticConstants k = solve_t_star(tol);
        Worst w;
        w.see(std::abs(f_of_t(k.t_star)), "f(t*)");
        w.see(std::abs(2.0 * (1.0 - k.t_star) - k.minus_ln_t_star), "2(1-t*) vs -ln t*");
        if (!(k.t_star > 0.0 && k.t_star < 1.0)) w.fail("t* outside (0,1)");
        out.push_back(max_check("t_star residual", w, 1e-10));
    });

    guarded(out, "a_c_sigma residual |a b* / sigma^2 - 1|", [&] {
        Worst w;
        for (const double c : kRootCValues) {
            for (const double s : sigmas) {
                const double a = solve_a_c_sigma(c, s, tol);
                w.see(std::abs(std::expm1(std::log(a) + log_b_star(a, c) - 2.0 * std::log(s))), at_cs(c, s));
            }
        }
        out.push_back(max_check("a_c_sigma residual |a b* / sigma^2 - 1|", w, 1e-10));
    });

    guarded(out, "a_sigma residual |l1(a_sigma)|", [&] {
        Worst w;
        for (const double s : sigmas) {
            const double a = solve_a_sigma(s, tol);
            if (!(a > 0.0 && a < s * s)) w.fail(fmt::format("a_sigma outside (0, sigma^2) at sigma={:g}", s));
            w.see(std::abs(ell1(a, s)), fmt::format("sigma={:g}", s));
        }
        out.push_back(max_check("a_sigma residual |l1(a_sigma)|", w, 1e-10));
    });

    guarded(out, "A_c and A_c_sigma residuals", [&] {
        Worst w;
        for (const double c : kRootCValues) {
            const double A = solve_A_c(c, tol);
            w.see(std::abs(log_B_star(A, c)), fmt::format("A_c c={:g}", c));
            for (const double s : sigmas) {
                const double a = solve_A_c_sigma(c, s, tol);
                w.see(std::abs(std::expm1(std::log(a) + log_B_star(a, c) - 2.0 * std::log(s))), at_cs(c, s));
            }
        }
        out.push_back(max_check("A_c and A_c_sigma residuals", w, 1e-10));
    });

    guarded(out, "a_sigma = a_{c_sigma,sigma}, b_sigma = b*_{a_sigma,c_sigma}", [&] {
        Worst w;
        for (const double s : sigmas) {
            const UniversalWinsorSolution u = lower_bound_universal(s, 1.0, tol);
            w.see(rel_diff(solve_a_c_sigma(u.c_sigma, s, tol), u.a_sigma), fmt::format("a at sigma={:g}", s));
            w.see(rel_diff(std::exp(log_b_star(u.a_sigma, u.c_sigma)), u.b_sigma),
                  fmt::format("b at sigma={:g}", s));
        }
        out.push_back(max_check("a_sigma = a_{c_sigma,sigma}, b_sigma = b*_{a_sigma,c_sigma}", w, 1e-8, " rel"));
    });

    guarded(out, "c_sigma is a strict interior minimum in c", [&] {
        double margin = std::numeric_limits<double>::infinity();
        std::string where;
        for (const double s : sigmas) {
            const UniversalWinsorSolution u = lower_bound_universal(s, 1.0, tol);
            const double at = winsor_moment(u.extremal, u.c_sigma);
            for (const double f : {1.0 - 1e-3, 1.0 + 1e-3}) {
                const double m = winsor_moment(u.extremal, u.c_sigma * f) / at - 1.0;
                if (m < margin) {
                    margin = m;
                    where = fmt::format("sigma={:g} c=c_sigma*{:g}", s, f);
                }
            }
        }
        out.push_back(flag_check("c_sigma is a strict interior minimum in c", margin > 0.0, margin,
                                 "min relative excess over the value at c_sigma, at " + where));
    });

    guarded(out, "d/da ln m(a,sigma) = l1(a)/(1+a)^2", [&] {
        Worst w;
        std::size_t checked = 0;
        std::size_t skipped = 0;
        for (const double s : {0.3, 1.0, 3.0, 10.0, 100.0}) {
            const double s2 = s * s;
            for (const double frac : {0.01, 0.05, 0.2, 0.5, 0.8, 0.95}) {
                const double a = frac * s2;
                const double exact = ell1(a, s) / ((1.0 + a) * (1.0 + a));
                if (std::abs(ell1(a, s)) < 1e-3) {  // too close to the root for a relative test
                    ++skipped;
                    continue;
                }
                const double h = 1e-6 * a;
                // Skip points where rounding in the difference alone exceeds 1e-6 of the slope
                // (large sigma near a = sigma^2: ln m sums O(10) terms but its slope is ~1e-10).
                const double terms = 2.0 * std::abs(std::log(a)) + std::abs(std::log(a * a + s2)) + 1.0;
                const double rounding = std::numeric_limits<double>::epsilon() * terms / (2.0 * h);
                if (rounding > 1e-6 * std::abs(exact)) {
                    ++skipped;
                    continue;
                }
                ++checked;
                const double numeric =
                    (log_two_point_min_over_c(a + h, s) - log_two_point_min_over_c(a - h, s)) / (2.0 * h);
                w.see(rel_diff(numeric, exact), fmt::format("sigma={:g} a={:g}", s, a));
            }
        }
        CheckOutcome o = max_check("d/da ln m(a,sigma) = l1(a)/(1+a)^2", w, 1e-4, " rel");
        o.passed = o.passed && checked > 0;
        o.detail += fmt::format(" ({} points checked, {} ill-conditioned skipped)", checked, skipped);
        out.push_back(std::move(o));
    });

    guarded(out, "cut rescaling (c, sigma, y) -> (c y, sigma / y, 1)", [&] {
        bool same = true;
        std::string where;
        for (const double y : {0.5, 2.0, 7.0}) {
            for (const double c : {0.5, 2.0}) {
                for (const double s : {0.3, 1.0, 30.0}) {
                    const BoundQuery q{c, s, y};
                    const BoundQuery n = q.normalized();
                    const bool w_same = lower_bound_fixed_c(q, tol).bound == lower_bound_fixed_c(n, tol).bound;
                    const bool t_same = lower_bound_trunc(q, tol).bound == lower_bound_trunc(n, tol).bound;
                    const bool u_same =
                        lower_bound_universal(s, y, tol).bound == lower_bound_universal(s / y, 1.0, tol).bound;
                    if (!(w_same && t_same && u_same) && same) {
                        same = false;
                        where = fmt::format(" first mismatch at c={:g} sigma={:g} y={:g}", c, s, y);
                    }
                }
            }
        }
        out.push_back(flag_check("cut rescaling (c, sigma, y) -> (c y, sigma / y, 1)", same, 0.0,
                                 "bitwise equality" + where));
    });

    guarded(out, "large-sigma branch: A_{c,sigma} >= A_c and B_{c,sigma} >= 1", [&] {
        bool ok = true;
        std::string where;
        for (const double c : kRootCValues) {
            const double A = solve_A_c(c, tol);
            for (const double s : sigmas) {
                if (s * s < A) continue;
                const TruncSolution t = lower_bound_trunc({c, s, 1.0}, tol);
                if (t.branch == TruncBranch::SmallSigma && s * s > A) {
                    ok = false;
                    where = at_cs(c, s) + " took the small-sigma branch";
                }
                if (t.branch == TruncBranch::LargeSigma &&
                    (!(*t.A_c_sigma >= A * (1.0 - 1e-12)) || !(*t.B_c_sigma >= 1.0))) {
                    ok = false;
                    where = at_cs(c, s);
                }
            }
        }
        out.push_back(flag_check("large-sigma branch: A_{c,sigma} >= A_c and B_{c,sigma} >= 1", ok, 0.0,
                                 where.empty() ? "all grid points" : where));
    });
    return out;
}

std::vector<CheckOutcome> verify_ordering(const VerifyOptions& opts) {
    std::vector<CheckOutcome> out;
    const auto& tol = opts.tol;
    const std::vector<double> sigmas = logspace(1e-2, 1e4, 60);
    const std::vector<double>& cs = test_c_values();

    guarded(out, "ordering and monotonicity", [&] {
        const std::size_t n = sigmas.size();
        std::vector<double> lu(n), c_sigma(n);
        std::vector<std::vector<double>> lw(cs.size(), std::vector<double>(n)), lt = lw;
        for (std::size_t i = 0; i < n; ++i) {
            const UniversalWinsorSolution u = lower_bound_universal(sigmas[i], 1.0, tol);
            lu[i] = u.bound;
            c_sigma[i] = u.c_sigma;
            for (std::size_t j = 0; j < cs.size(); ++j) {
                lw[j][i] = lower_bound_fixed_c({cs[j], sigmas[i], 1.0}, tol).bound;
                lt[j][i] = lower_bound_trunc({cs[j], sigmas[i], 1.0}, tol).bound;
            }
        }

        // L_T <= L_W <= 1, reported as max of (L_T/L_W - 1, L_W - 1); must be < 0.
        double worst_order = -std::numeric_limits<double>::infinity();
        std::string where_order;
        // L_{W;sigma} / L_{W;c,sigma} - 1; must be < 0 away from c_sigma.
        double worst_universal = -std::numeric_limits<double>::infinity();
        std::string where_universal;
        Worst equality;
        bool monotone = true;
        std::string where_monotone;
        bool ratio_decreasing = true;
        std::string where_ratio;

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < cs.size(); ++j) {
                const double o = std::max(lt[j][i] / lw[j][i] - 1.0, lw[j][i] - 1.0);
                if (o > worst_order) {
                    worst_order = o;
                    where_order = at_cs(cs[j], sigmas[i]);
                }
                if (std::abs(cs[j] - c_sigma[i]) > 1e-3 * c_sigma[i]) {
                    const double r = lu[i] / lw[j][i] - 1.0;
                    if (r > worst_universal) {
                        worst_universal = r;
                        where_universal = at_cs(cs[j], sigmas[i]);
                    }
                }
                if (i > 0) {
                    if (!(lw[j][i] <= lw[j][i - 1]) || !(lt[j][i] <= lt[j][i - 1])) {
                        monotone = false;
                        where_monotone = at_cs(cs[j], sigmas[i]);
                    }
                    if (!(lt[j][i] / lw[j][i] <= lt[j][i - 1] / lw[j][i - 1])) {
                        ratio_decreasing = false;
                        where_ratio = at_cs(cs[j], sigmas[i]);
                    }
                }
            }
            if (i > 0 && !(lu[i] <= lu[i - 1])) {
                monotone = false;
                where_monotone = fmt::format("universal sigma={:g}", sigmas[i]);
            }
            const double at_opt = lower_bound_fixed_c({c_sigma[i], sigmas[i], 1.0}, tol).bound;
            equality.see(rel_diff(at_opt, lu[i]), fmt::format("sigma={:g}", sigmas[i]));
        }

        out.push_back(flag_check("L_T <= L_W <= 1", worst_order < 0.0, worst_order,
                                 "max(L_T/L_W - 1, L_W - 1) at " + where_order));
        out.push_back(flag_check("L_W;sigma < L_W;c,sigma for c != c_sigma", worst_universal < 0.0,
                                 worst_universal, "max(L_W;sigma / L_W;c,sigma - 1) at " + where_universal));
        out.push_back(max_check("L_W;c,sigma = L_W;sigma at c = c_sigma", equality, 1e-10, " rel"));
        out.push_back(flag_check("bounds nonincreasing in sigma", monotone, 0.0,
                                 monotone ? "all columns" : "first increase at " + where_monotone));
        out.push_back(flag_check("L_T / L_W decreasing in sigma", ratio_decreasing, 0.0,
                                 ratio_decreasing ? "all columns" : "first increase at " + where_ratio));
    });

    guarded(out, "truncation branch continuity at sigma^2 = A_c", [&] {
        Worst w;
        for (const double c : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
            const double A = solve_A_c(c, tol);
            const BoundQuery q{c, std::sqrt(A), 1.0};
            const double small = lower_bound_trunc_branch(q, TruncBranch::SmallSigma, tol).bound;
            const double large = lower_bound_trunc_branch(q, TruncBranch::LargeSigma, tol).bound;
            w.see(rel_diff(small, large), fmt::format("c={:g}", c));
        }
        out.push_back(max_check("truncation branch continuity at sigma^2 = A_c", w, 1e-10, " rel"));
    });
    return out;
}

std::vector<CheckOutcome> verify_certificates(const VerifyOptions& opts) {
    std::vector<CheckOutcome> out;
    const auto& tol = opts.tol;

    struct Tally {
        std::size_t count = 0;
        std::size_t failed = 0;
        double worst_violation = std::numeric_limits<double>::infinity();
        double worst_tangency = 0.0;
        std::string first_failure;

        void add(const CertificateReport& r, const std::string& at) {
            ++count;
            worst_violation = std::min(worst_violation, r.worst_violation);
            worst_tangency = std::max(worst_tangency, r.max_tangency_error);
            if (!r.passed) {
                ++failed;
                if (first_failure.empty()) first_failure = at + ": " + r.failure;
            }
        }
        CheckOutcome outcome(const std::string& name) const {
            return flag_check(name, failed == 0 && count > 0, worst_violation,
                              fmt::format("{} certificates, {} failed, min (F-G)/max(1,F)={:.3g}, "
                                          "max tangency error={:.3g}{}",
                                          count, failed, worst_violation, worst_tangency,
                                          first_failure.empty() ? "" : "; " + first_failure));
        }
    };

    guarded(out, "certificates", [&] {
        Tally winsor, small, large;
        Worst value_match;
        bool small_beta_ok = true;
        for (const double c : test_c_values()) {
            const double A = solve_A_c(c, tol);
            for (const double s : certificate_sigma_values()) {
                const double s2 = s * s;
                const WinsorSolution w = lower_bound_fixed_c({c, s, 1.0}, tol);
                const QuadraticMinorant gw = winsor_minorant(w.a_c_sigma, c);
                winsor.add(check_certificate(gw, MomentKind::Winsor, c), at_cs(c, s));
                // E G(X) = alpha + gamma sigma^2 for any zero-mean X with E X^2 = sigma^2.
                value_match.see(rel_diff(gw.alpha + gw.gamma * s2, w.bound), "winsor " + at_cs(c, s));

                const TruncSolution t = lower_bound_trunc({c, s, 1.0}, tol);
                if (t.branch == TruncBranch::SmallSigma) {
                    const QuadraticMinorant g = trunc_minorant_small(s2, c, tol);
                    small.add(check_certificate(g, MomentKind::Trunc, c), at_cs(c, s));
                    const double floor = std::exp(-s2 * c) * c * (1.0 + s2 * s2) / ((1.0 + s2) * (1.0 + s2));
                    small_beta_ok = small_beta_ok && g.beta > floor && g.gamma < 0.0;
                    value_match.see(rel_diff(g.alpha + g.gamma * s2, t.bound), "trunc " + at_cs(c, s));
                } else {
                    const QuadraticMinorant g = trunc_minorant_large(*t.A_c_sigma, c);
                    large.add(check_certificate(g, MomentKind::Trunc, c), at_cs(c, s));
                    value_match.see(rel_diff(g.alpha + g.gamma * s2, t.bound), "trunc " + at_cs(c, s));
                }
            }
            // Boundary a = A_c: both truncation certificates exist and give the same bound.
            const QuadraticMinorant gs = trunc_minorant_small(A, c, tol);
            const QuadraticMinorant gl = trunc_minorant_large(A, c);
            small.add(check_certificate(gs, MomentKind::Trunc, c), fmt::format("c={:g} a=A_c", c));
            large.add(check_certificate(gl, MomentKind::Trunc, c), fmt::format("c={:g} a=A_c", c));
            value_match.see(rel_diff(gs.alpha + gs.gamma * A, gl.alpha + gl.gamma * A),
                            fmt::format("boundary c={:g}", c));
        }
        out.push_back(winsor.outcome("winsor minorant certificates"));
        out.push_back(small.outcome("truncation small-sigma certificates"));
        out.push_back(large.outcome("truncation large-sigma certificates"));
        out.push_back(flag_check("small-sigma beta > e^{-ac} c (1+a^2)/(1+a)^2, gamma < 0", small_beta_ok, 0.0,
                                 "all small-sigma grid points"));
        out.push_back(max_check("alpha + gamma sigma^2 equals the bound", value_match, 1e-9, " rel"));
    });

    guarded(out, "negative control: beta lowered 10% fails", [&] {
        std::size_t rejected = 0;
        std::size_t total = 0;
        for (const auto& [c, s] : representative_pairs()) {
            QuadraticMinorant g = winsor_minorant(lower_bound_fixed_c({c, s, 1.0}, tol).a_c_sigma, c);
            g.beta *= 0.9;
            ++total;
            if (!check_certificate(g, MomentKind::Winsor, c).passed) ++rejected;
        }
        out.push_back(flag_check("negative control: beta lowered 10% fails", rejected == total,
                                 static_cast<double>(total - rejected),
                                 fmt::format("{}/{} perturbed certificates rejected", rejected, total)));
    });
    return out;
}

namespace {

LogGrid universal_a_grid(double sigma) {
    const double s2 = sigma * sigma;
    return LogGrid{1e-6 * std::min(1.0, s2) / 2.0, s2 * (1.0 - 1e-12), 2'000};
}

const LogGrid kUniversalCGrid{1e-2, 1e2, 1'000};

// |ln x - ln ref| in units of the refined cell width.
double cells_apart(double x, double ref, double cell) { return std::abs(std::log(x / ref)) / cell; }

}  // namespace

std::vector<CheckOutcome> verify_oracle(const VerifyOptions& opts) {
    std::vector<CheckOutcome> out;
    const auto& tol = opts.tol;

    guarded(out, "grid minimization reproduces the bounds", [&] {
        Worst value;
        Worst cells;
        double undercut = -std::numeric_limits<double>::infinity();
        std::string where_undercut;
        double uniqueness = std::numeric_limits<double>::infinity();
        std::string where_unique;

        const auto record = [&](const GridMinResult& g, double bound, const std::string& at) {
            value.see(rel_diff(g.min_value, bound), at);
            const double u = 1.0 - g.min_value / bound;
            if (u > undercut) {
                undercut = u;
                where_undercut = at;
            }
        };
        const auto neighbours_exceed = [&](double c, double s, MomentKind kind, const GridMinResult& g,
                                           const std::string& at) {
            for (const double f : {-1.0, 1.0}) {
                const double a = g.a * std::exp(f * g.a_cell_log_width);
                const TwoPointDistribution d = TwoPointDistribution::make(a, s * s / a);
                const double v = kind == MomentKind::Winsor ? winsor_moment(d, c) : trunc_moment(d, c);
                const double m = v / g.min_value - 1.0;
                if (m < uniqueness) {
                    uniqueness = m;
                    where_unique = at;
                }
            }
        };

        for (const auto& [c, s] : representative_pairs()) {
            const LogGrid grid = default_a_grid(c, s);
            const WinsorSolution w = lower_bound_fixed_c({c, s, 1.0}, tol);
            const GridMinResult gw = grid_min_two_point(c, s, MomentKind::Winsor, grid);
            record(gw, w.bound, "winsor " + at_cs(c, s));
            cells.see(cells_apart(gw.a, w.a_c_sigma, gw.a_cell_log_width), "winsor " + at_cs(c, s));
            neighbours_exceed(c, s, MomentKind::Winsor, gw, "winsor " + at_cs(c, s));

            const TruncSolution t = lower_bound_trunc({c, s, 1.0}, tol);
            const double t_arg = t.branch == TruncBranch::SmallSigma ? s * s : *t.A_c_sigma;
            const GridMinResult gt = grid_min_two_point(c, s, MomentKind::Trunc, grid);
            record(gt, t.bound, "trunc " + at_cs(c, s));
            cells.see(cells_apart(gt.a, t_arg, gt.a_cell_log_width), "trunc " + at_cs(c, s));
            neighbours_exceed(c, s, MomentKind::Trunc, gt, "trunc " + at_cs(c, s));

            const UniversalWinsorSolution u = lower_bound_universal(s, 1.0, tol);
            const GridMinResult gu = grid_min_universal(s, universal_a_grid(s), kUniversalCGrid);
            record(gu, u.bound, fmt::format("universal sigma={:g}", s));
            cells.see(std::max(cells_apart(gu.a, u.a_sigma, gu.a_cell_log_width),
                               cells_apart(gu.c, u.c_sigma, gu.c_cell_log_width)),
                      fmt::format("universal sigma={:g}", s));
        }
        out.push_back(max_check("grid minimum matches the analytic bound", value, 1e-6, " rel"));
        out.push_back(flag_check("grid minimum never undercuts the bound", undercut <= 1e-12, undercut,
                                 "max(1 - grid_min / bound) at " + where_undercut));
        out.push_back(max_check("grid argmin within one refined cell of the analytic root", cells, 1.0, " cells"));
        out.push_back(flag_check("moments one cell from the argmin strictly exceed the minimum", uniqueness > 0.0,
                                 uniqueness, "min relative excess at " + where_unique));
    });

    guarded(out, "three-point probes never undercut", [&] {
        std::size_t violations = 0;
        std::size_t samples = 0;
        double worst = std::numeric_limits<double>::infinity();
        std::uint64_t seed = opts.seed;
        for (const auto& [c, s] : representative_pairs()) {
            const UniversalWinsorSolution u = lower_bound_universal(s, 1.0, tol);
            const ProbeReport reports[] = {
                three_point_probe(MomentKind::Winsor, c, s, lower_bound_fixed_c({c, s, 1.0}, tol).bound,
                                  opts.probe_samples, seed++),
                three_point_probe(MomentKind::Trunc, c, s, lower_bound_trunc({c, s, 1.0}, tol).bound,
                                  opts.probe_samples, seed++),
                three_point_probe(MomentKind::Winsor, u.c_sigma, s, u.bound, opts.probe_samples, seed++),
            };
            for (const ProbeReport& r : reports) {
                violations += r.violations;
                samples += r.samples;
                worst = std::min(worst, r.worst_margin);
            }
        }
        out.push_back(flag_check("three-point probes never undercut", violations == 0, worst,
                                 fmt::format("{} samples, {} violations, min moment/bound - 1 = {:.3g}, seed {}",
                                             samples, violations, worst, opts.seed)));
    });

    guarded(out, "truncation collapse", [&] {
        const double floor = lower_bound_universal(1.0, 1.0, tol).bound;
        const std::vector<CollapseRow> rows = trunc_collapse_sequence(1.0, collapse_a_values(6));
        bool decreasing = true;
        double at_005 = std::numeric_limits<double>::infinity();
        double winsor_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i > 0 && !(rows[i].trunc_moment < rows[i - 1].trunc_moment)) decreasing = false;
            if (rows[i].a == 0.05) at_005 = rows[i].trunc_moment;
            winsor_min = std::min(winsor_min, rows[i].winsor_min_over_c);
        }
        const bool ok = decreasing && at_005 < 1e-2 && winsor_min >= floor * (1.0 - 1e-12);
        out.push_back(flag_check("truncation collapse", ok, at_005,
                                 fmt::format("sigma=1: moment at a=0.05 is {:.3g} (< 1e-2), strictly decreasing={}, "
                                             "min Winsor value {:.6f} >= L_W;sigma {:.6f}",
                                             at_005, decreasing, winsor_min, floor)));
    });
    return out;
}

std::vector<CheckOutcome> verify_asymptotics(const VerifyOptions& opts) {
    std::vector<CheckOutcome> out;
    const auto& tol = opts.tol;

    guarded(out, "t_star constants", [&] {
        const AsymptoticConstants k = solve_t_star(tol);
        const bool ok = three_decimals(k.t_star) == 0.203 && three_decimals(k.minus_ln_t_star) == 1.593 &&
                        std::abs(2.0 * (1.0 - k.t_star) - k.minus_ln_t_star) <= 1e-10;
        out.push_back(flag_check("t_star = 0.203..., -ln t_star = 1.593...", ok, k.t_star,
                                 fmt::format("t*={:.12f} -ln t*={:.12f}", k.t_star, k.minus_ln_t_star)));
    });

    guarded(out, "infimum identities over c", [&] {
        const AsymptoticConstants& k = asymptotic_constants();
        constexpr int kBits = 27;  // ~1e-8 relative bracket
        const auto slope = boost::math::tools::brent_find_minima(
            [](double c) { return winsor_small_sigma_slope(c); }, 1e-6, 20.0, kBits);
        const auto coeff = boost::math::tools::brent_find_minima(
            [](double c) { return winsor_large_sigma_coeff(c); }, 1e-2, 20.0, kBits);
        Worst w;
        w.see(std::abs(slope.first - k.minus_ln_t_star), "argmin of -c^2/(4(e^c-1))");
        w.see(std::abs(slope.second - k.small_sigma_universal_slope), "min of -c^2/(4(e^c-1))");
        w.see(std::abs(coeff.first - 2.0), "argmin of 4e^c/c^2");
        w.see(rel_diff(coeff.second, std::exp(2.0)), "min of 4e^c/c^2");
        out.push_back(max_check("infimum identities over c", w, 1e-6));
    });

    guarded(out, "small-sigma slopes at sigma = 1e-3", [&] {
        const double s = 1e-3;
        Worst w;
        for (const double c : {0.5, 1.0, 2.0, 5.0}) {
            const double lw = lower_bound_fixed_c({c, s, 1.0}, tol).bound;
            const double lt = lower_bound_trunc({c, s, 1.0}, tol).bound;
            w.see(rel_diff((lw - 1.0) / (s * s), winsor_small_sigma_slope(c)), fmt::format("winsor c={:g}", c));
            w.see(rel_diff((lt - 1.0) / (s * s), -c), fmt::format("trunc c={:g}", c));
        }
        const double lu = lower_bound_universal(s, 1.0, tol).bound;
        w.see(rel_diff((lu - 1.0) / (s * s), asymptotic_constants().small_sigma_universal_slope), "universal");
        out.push_back(max_check("small-sigma slopes at sigma = 1e-3", w, 1e-2, " rel"));
    });

    guarded(out, "large-sigma ratio e^2 ln^2(sigma)/sigma^2 / L_W;sigma at 1e10", [&] {
        const double s = 1e10;
        const double ratio = universal_asymptote(s, SigmaRegime::Large) / lower_bound_universal(s, 1.0, tol).bound;
        out.push_back(flag_check("large-sigma ratio e^2 ln^2(sigma)/sigma^2 / L_W;sigma at 1e10",
                                 three_decimals(ratio) == 1.201, ratio, fmt::format("ratio={:.6f}", ratio)));
    });

    guarded(out, "large-sigma convergence exact/asymptote", [&] {
        // Monotone approach to 1 holds for c in {1, 1.5, 2} and the universal
        // bound; for c = 3, 5 the ratios overshoot before settling.
        const std::vector<double> sigmas{1e4, 1e6, 1e8, 1e10};
        bool ok = true;
        double worst_at_1e6 = 0.0;
        std::string where;
        const auto check_series = [&](const std::string& label, const std::function<double(double)>& ratio) {
            double prev = std::numeric_limits<double>::infinity();
            for (const double s : sigmas) {
                const double gap = std::abs(ratio(s) - 1.0);
                if (s == 1e6) worst_at_1e6 = std::max(worst_at_1e6, gap);
                if (!(gap < prev) || (s == 1e6 && gap > 0.3)) {
                    ok = false;
                    if (where.empty()) where = fmt::format("{} sigma={:g}", label, s);
                }
                prev = gap;
            }
        };
        for (const double c : {1.0, 1.5, 2.0}) {
            check_series(fmt::format("winsor c={:g}", c), [&](double s) {
                return lower_bound_fixed_c({c, s, 1.0}, tol).bound / winsor_asymptote(c, s, SigmaRegime::Large);
            });
            check_series(fmt::format("trunc c={:g}", c), [&](double s) {
                return lower_bound_trunc({c, s, 1.0}, tol).bound / trunc_asymptote(c, s, SigmaRegime::Large);
            });
        }
        check_series("universal", [&](double s) {
            return lower_bound_universal(s, 1.0, tol).bound / universal_asymptote(s, SigmaRegime::Large);
        });
        out.push_back(flag_check("large-sigma convergence exact/asymptote", ok, worst_at_1e6,
                                 "max |ratio - 1| at sigma=1e6 (tol 0.3), gaps shrinking along 1e4..1e10" +
                                     (where.empty() ? std::string() : "; fails at " + where)));
    });

    guarded(out, "L_W/L_T approaches e^c from below", [&] {
        const std::vector<double> sigmas{1e4, 1e6, 1e8, 1e10};
        bool ok = true;
        double worst_final = 0.0;
        std::string where;
        for (const double c : test_c_values()) {
            double prev = 0.0;
            for (const double s : sigmas) {
                const double r = lower_bound_fixed_c({c, s, 1.0}, tol).bound /
                                 lower_bound_trunc({c, s, 1.0}, tol).bound / std::exp(c);
                if (!(r < 1.0) || !(r > prev)) {
                    ok = false;
                    if (where.empty()) where = at_cs(c, s);
                }
                if (s == 1e10 && c <= 1.0) {
                    worst_final = std::max(worst_final, 1.0 - r);
                    if (1.0 - r > 0.05) {
                        ok = false;
                        if (where.empty()) where = at_cs(c, s) + " not within 5%";
                    }
                }
                prev = r;
            }
        }
        out.push_back(flag_check("L_W/L_T approaches e^c from below", ok, worst_final,
                                 "max 1 - ratio/e^c at sigma=1e10 for c <= 1 (tol 0.05)" +
                                     (where.empty() ? std::string() : "; fails at " + where)));
    });
    return out;
}

std::vector<CheckOutcome> run_suite(Suite suite, const VerifyOptions& opts) {
    switch (suite) {
        case Suite::Roots: return verify_roots(opts);
        case Suite::Ordering: return verify_ordering(opts);
        case Suite::Certificates: return verify_certificates(opts);
        case Suite::Oracle: return verify_oracle(opts);
        case Suite::Asymptotics: return verify_asymptotics(opts);
        case Suite::All: break;
    }
    std::vector<CheckOutcome> all;
    for (const Suite s : {Suite::Roots, Suite::Ordering, Suite::Certificates, Suite::Oracle, Suite::Asymptotics}) {
        for (CheckOutcome& o : run_suite(s, opts)) {
            o.name = std::string(to_string(s)) + ": " + o.name;
            all.push_back(std::move(o));
        }
    }
    return all;
}

std::string format_outcome(const CheckOutcome& o) {
    return fmt::format("{} {}  worst={:.6g}  {}", o.passed ? "PASS" : "FAIL", o.name, o.worst, o.detail);
}

}  // namespace wbounds
