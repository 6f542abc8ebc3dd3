// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "wbounds/asymptotics.hpp"
#include "wbounds/oracle.hpp"
#include "wbounds/sweep.hpp"
#include "wbounds/trunc.hpp"
#include "wbounds/verify.hpp"
#include "wbounds/winsor.hpp"

#include "reference_values.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <vector>

using namespace wbounds;

namespace {

using Clock = std::chrono::steady_clock;

double floor3(double x) { return std::floor(x * 1000.0) / 1000.0; }

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Verdict {
    bool ok = false;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Verdict()>& body) {
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, fmt::format("threw: {}", e.what())};
    }
    if (!v.ok) ++failures;
    fmt::print("{} C{:<2} {}  [{}]\n", v.ok ? "PASS" : "FAIL", id, title, v.detail);
}

bool all_passed(const std::vector<CheckOutcome>& outs, std::string& first_failure) {
    for (const CheckOutcome& o : outs) {
        if (!o.passed) {
            first_failure = format_outcome(o);
            return false;
        }
    }
    return true;
}

Verdict single_universal(double sigma, double expected) {
    lower_bound_universal(sigma);  // warm the cached constants
    const auto t0 = Clock::now();
    const double v = lower_bound_universal(sigma).bound;
    const double ms = ms_since(t0);
    return {floor3(v) == expected && ms < 10.0, fmt::format("L={:.9f} t={:.3f}ms", v, ms)};
}

CsvData emit(SweepKind kind, std::vector<double> cs) {
    SweepSpec spec;
    spec.kind = kind;
    spec.c_values = std::move(cs);
    spec.sigma_min = 0.1;
    spec.sigma_max = 100.0;
    spec.points = 200;
    spec.scale = SweepScale::Log;
    return parse_csv(to_csv(run_sweep(spec)));
}

}  // namespace

int main() {
    report(1, "L_W;sigma at sigma^2=1 is 0.878..., < 10 ms", [] { return single_universal(1.0, 0.878); });
    report(2, "L_W;sigma at sigma^2=100 is 0.194..., < 10 ms", [] { return single_universal(10.0, 0.194); });

    report(3, "t_* = 0.203..., -ln t_* = 1.593..., 2(1-t_*) = -ln t_*", [] {
        const AsymptoticConstants k = solve_t_star();
        const double gap = std::abs(2.0 * (1.0 - k.t_star) - k.minus_ln_t_star);
        return Verdict{floor3(k.t_star) == 0.203 && floor3(k.minus_ln_t_star) == 1.593 && gap <= 1e-10,
                       fmt::format("t*={:.12f} -ln t*={:.12f} gap={:.2e}", k.t_star, k.minus_ln_t_star, gap)};
    });

    report(4, "e^2 ln^2(sigma)/sigma^2 / L_W;sigma at 1e10 is 1.201..., < 100 ms", [] {
        const auto t0 = Clock::now();
        const double s = 1e10;
        const double r = universal_asymptote(s, SigmaRegime::Large) / lower_bound_universal(s).bound;
        const double ms = ms_since(t0);
        return Verdict{floor3(r) == 1.201 && ms < 100.0, fmt::format("ratio={:.9f} t={:.3f}ms", r, ms)};
    });

    report(5, "small-sigma slopes at sigma=1e-3 within 1%", [] {
        const double s = 1e-3;
        double worst = 0.0;
        for (const double c : {0.5, 1.0, 2.0, 5.0}) {
            const BoundQuery q{c, s, 1.0};
            const double w = (lower_bound_fixed_c(q).bound - 1.0) / (s * s);
            const double t = (lower_bound_trunc(q).bound - 1.0) / (s * s);
            const double ew = -c * c / (4.0 * std::expm1(c));
            worst = std::max({worst, std::abs(w / ew - 1.0), std::abs(t / -c - 1.0)});
        }
        return Verdict{worst < 0.01, fmt::format("worst rel={:.3e}", worst)};
    });

    report(6, "a_sigma = a_{c_sigma,sigma} and b_sigma = b*(a_sigma,c_sigma) to 1e-8", [] {
        double worst = 0.0;
        for (const double s : logspace(1e-3, 1e6, 40)) {
            const UniversalWinsorSolution u = lower_bound_universal(s);
            const double a2 = solve_a_c_sigma(u.c_sigma, s);
            const double lb = log_b_star(u.a_sigma, u.c_sigma);
            worst = std::max({worst, std::abs(a2 / u.a_sigma - 1.0), std::abs(std::exp(lb - std::log(u.b_sigma)) - 1.0)});
        }
        return Verdict{worst <= 1e-8, fmt::format("worst rel={:.3e}", worst)};
    });

    report(7, "certificate suite passes on 1e5-point grids, < 30 s", [] {
        const auto t0 = Clock::now();
        const std::vector<CheckOutcome> outs = verify_certificates();
        const double ms = ms_since(t0);
        std::string why;
        const bool ok = all_passed(outs, why);
        return Verdict{ok && ms < 30'000.0,
                       ok ? fmt::format("{} checks t={:.0f}ms", outs.size(), ms) : why};
    });

    report(8, "grid oracle within 1e-6, argmin within one cell, no three-point undercut", [] {
        const std::vector<CheckOutcome> outs = verify_oracle();
        std::string why;
        const bool ok = all_passed(outs, why);
        return Verdict{ok, ok ? fmt::format("{} checks", outs.size()) : why};
    });

    report(9, "L_T continuous at sigma^2 = A_c to 1e-10", [] {
        double worst = 0.0;
        for (const double c : {0.5, 1.0, 2.0, 5.0}) {
            const BoundQuery q{c, std::sqrt(solve_A_c(c)), 1.0};
            const double small = lower_bound_trunc_branch(q, TruncBranch::SmallSigma).bound;
            const double large = lower_bound_trunc_branch(q, TruncBranch::LargeSigma).bound;
            worst = std::max(worst, std::abs(small / large - 1.0));
        }
        return Verdict{worst <= 1e-10, fmt::format("worst rel={:.3e}", worst)};
    });

    report(10, "ordering and monotonicity over the sweep grid", [] {
        const std::vector<CheckOutcome> outs = verify_ordering();
        std::string why;
        const bool ok = all_passed(outs, why);
        return Verdict{ok, ok ? fmt::format("{} checks", outs.size()) : why};
    });

    report(11, "collapse: E exp{cT} < 1e-2 by a=0.05 at sigma=1, Winsor floor 0.878...", [] {
        const std::vector<CollapseRow> rows = trunc_collapse_sequence(1.0, collapse_a_values(4));
        const CollapseRow& last = rows.back();
        bool floor_ok = true;
        for (const CollapseRow& r : rows) floor_ok = floor_ok && floor3(r.winsor_min_over_c) >= 0.878;
        const bool ok = last.a == 0.05 && last.trunc_moment < 1e-2 && floor_ok &&
                        floor3(lower_bound_universal(1.0).bound) == 0.878;
        return Verdict{ok, fmt::format("a={} moment={:.4e}", last.a, last.trunc_moment)};
    });

    report(12, "figure CSVs have the expected shapes", [] {
        const std::vector<double> cs{1.0, 1.5, 2.0, 3.0, 5.0};
        std::vector<std::string> bad;

        const CsvData f1 = emit(SweepKind::UniversalWinsor, {});
        for (std::size_t i = 1; i < f1.rows.size(); ++i) {
            if (!(f1.rows[i][1] < f1.rows[i - 1][1])) {
                bad.push_back("fig1 not decreasing");
                break;
            }
        }

        const CsvData top = emit(SweepKind::RatioUniversalOverFixed, cs);
        bool c2_not_flat = false;
        for (const auto& row : top.rows) {
            const auto best = std::max_element(row.begin() + 1, row.end());
            const double c_best = cs[static_cast<std::size_t>(best - row.begin() - 1)];
            if (*std::max_element(row.begin() + 1, row.end()) > 1.0) bad.push_back("top ratio > 1");
            if (c_best != 1.5 && c_best != 2.0) bad.push_back(fmt::format("top argmax c={} at sigma={}", c_best, row[0]));
            if (row[3] != 1.0) c2_not_flat = true;
        }
        const auto& last_top = top.rows.back();
        if (std::max_element(last_top.begin() + 1, last_top.end()) - last_top.begin() != 3) {
            bad.push_back("top argmax at sigma_max is not c=2");
        }
        if (!c2_not_flat) bad.push_back("c=2 column identically 1");

        const CsvData bottom = emit(SweepKind::RatioTruncOverWinsor, cs);
        for (std::size_t j = 0; j < cs.size(); ++j) {
            const double floor_c = std::exp(-cs[j]);
            for (std::size_t i = 1; i < bottom.rows.size(); ++i) {
                if (!(bottom.rows[i][j + 1] < bottom.rows[i - 1][j + 1])) {
                    bad.push_back(fmt::format("bottom c={} not decreasing", cs[j]));
                    break;
                }
            }
            const double first = bottom.rows.front()[j + 1];
            const double last = bottom.rows.back()[j + 1];
            if (!(std::abs(std::log(last / floor_c)) < std::abs(std::log(first / floor_c)))) {
                bad.push_back(fmt::format("bottom c={} not approaching e^-c", cs[j]));
            }
        }
        if (bad.size() > 3) bad.resize(3);
        std::string joined;
        for (const std::string& b : bad) joined += (joined.empty() ? "" : "; ") + b;
        return Verdict{bad.empty(), bad.empty() ? "fig1, fig2 top, fig2 bottom" : joined};
    });

    fmt::print("{} of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
