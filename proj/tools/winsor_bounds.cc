// winsor-bounds: exact lower bounds on exponential moments of Winsorized and
// truncated random variables under mean and second-moment constraints.
//
// Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 numerical failure.

#include "wbounds/asymptotics.hpp"
#include "wbounds/errors.hpp"
#include "wbounds/oracle.hpp"
#include "wbounds/sweep.hpp"
#include "wbounds/trunc.hpp"
#include "wbounds/verify.hpp"
#include "wbounds/winsor.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace wbounds;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNumerical = 3;

RootTolerances tolerances_from_env() {
    RootTolerances tol;
    const char* raw = std::getenv("WINSOR_BOUNDS_TOL");
    if (raw == nullptr || *raw == '\0') {
        return tol;
    }
    const std::string text(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v) || !(v > 0.0)) {
        throw ValidationError("WINSOR_BOUNDS_TOL must be a positive number, got '" + text + "'");
    }
    tol.abs_tol = v;
    tol.rel_tol = v;
    return tol;
}

struct Options {
    std::string kind;
    std::vector<double> c_values;
    double sigma = 1.0;
    double sigma_min = 0.1;
    double sigma_max = 100.0;
    std::size_t points = 200;
    std::string scale = "log";
    double cut = 1.0;
    std::string out;
    std::string suite = "all";
    std::uint64_t seed = kDefaultProbeSeed;
    std::size_t steps = 6;
};

double single_c(const Options& o) {
    detail::require(o.c_values.size() == 1, "bound: --c takes exactly one value for this kind");
    return o.c_values.front();
}

int cmd_bound(const Options& o, const RootTolerances& tol) {
    std::string line;
    if (o.kind == "universal-winsor") {
        detail::require(o.c_values.empty(), "bound: --c is not used with --kind universal-winsor");
        const UniversalWinsorSolution u = lower_bound_universal(o.sigma, o.cut, tol);
        line = fmt::format("kind=universal-winsor sigma={:.17g} cut={:.17g} bound={:.17g} a={:.17g} b={:.17g} "
                           "c_sigma={:.17g}",
                           o.sigma, o.cut, u.bound, u.a_sigma, u.b_sigma, u.c_sigma);
    } else if (o.kind == "fixed-c-winsor" || o.kind == "winsor") {
        const BoundQuery q{single_c(o), o.sigma, o.cut};
        const WinsorSolution w = lower_bound_fixed_c(q, tol);
        line = fmt::format("kind=fixed-c-winsor c={:.17g} sigma={:.17g} cut={:.17g} bound={:.17g} a={:.17g} "
                           "b={:.17g}",
                           q.c, q.sigma, q.cut, w.bound, w.a_c_sigma, w.b_c_sigma);
    } else if (o.kind == "trunc") {
        const BoundQuery q{single_c(o), o.sigma, o.cut};
        const TruncSolution t = lower_bound_trunc(q, tol);
        const double a = t.branch == TruncBranch::SmallSigma ? t.extremal.a : *t.A_c_sigma;
        const double b = t.branch == TruncBranch::SmallSigma ? t.extremal.b : *t.B_c_sigma;
        line = fmt::format("kind=trunc c={:.17g} sigma={:.17g} cut={:.17g} bound={:.17g} a={:.17g} b={:.17g} "
                           "A_c={:.17g} branch={}",
                           q.c, q.sigma, q.cut, t.bound, a, b, t.A_c, to_string(t.branch));
    } else {
        throw ValidationError("bound: unknown --kind '" + o.kind +
                              "' (expected universal-winsor, fixed-c-winsor or trunc)");
    }
    std::cout << line << '\n';
    return 0;
}

int cmd_sweep(const Options& o, const RootTolerances& tol) {
    SweepSpec spec;
    spec.kind = parse_sweep_kind(o.kind);
    spec.c_values = o.c_values;
    spec.sigma_min = o.sigma_min;
    spec.sigma_max = o.sigma_max;
    spec.points = o.points;
    spec.scale = parse_sweep_scale(o.scale);
    spec.cut = o.cut;
    if (!needs_c_values(spec.kind)) {
        detail::require(o.c_values.empty(), "sweep: --c is not used with --kind universal-winsor");
    }
    const SweepTable table = run_sweep(spec, tol);
    if (o.out.empty()) {
        std::cout << to_csv(table);
    } else {
        write_csv(table, o.out);
    }
    return 0;
}

int cmd_verify(const Options& o, const RootTolerances& tol) {
    VerifyOptions opts;
    opts.seed = o.seed;
    opts.tol = tol;
    const std::vector<CheckOutcome> outcomes = run_suite(parse_suite(o.suite), opts);
    std::size_t failed = 0;
    for (const CheckOutcome& c : outcomes) {
        std::cout << format_outcome(c) << '\n';
        failed += c.passed ? 0 : 1;
    }
    std::cout << fmt::format("{} checks, {} failed\n", outcomes.size(), failed);
    return failed == 0 ? 0 : kExitVerifyFailed;
}

int cmd_collapse(const Options& o, const RootTolerances& tol) {
    detail::require(o.steps >= 1, "collapse-demo: --steps must be >= 1");
    const double floor = lower_bound_universal(o.sigma, 1.0, tol).bound;
    const std::vector<CollapseRow> rows = trunc_collapse_sequence(o.sigma, collapse_a_values(o.steps));
    std::string text = fmt::format("{:>10} {:>14} {:>14} {:>24} {:>24} {:>24}\n", "a", "b", "c", "E exp{cT(X)}",
                                   "min_c E exp{cW(X)}", "L_W;sigma");
    for (const CollapseRow& r : rows) {
        text += fmt::format("{:>10.4g} {:>14.6g} {:>14.6g} {:>24.17g} {:>24.17g} {:>24.17g}\n", r.a, r.b, r.c,
                            r.trunc_moment, r.winsor_min_over_c, floor);
    }
    std::cout << text;
    return 0;
}

int cmd_constants(const RootTolerances& tol) {
    const AsymptoticConstants k = solve_t_star(tol);
    std::cout << fmt::format("t_star={:.17g}\nminus_ln_t_star={:.17g}\ne_squared={:.17g}\n"
                             "one_minus_t_star_times_t_star={:.17g}\n",
                             k.t_star, k.minus_ln_t_star, k.large_sigma_universal_coeff,
                             -k.small_sigma_universal_slope);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact lower bounds on exponential moments of Winsorized and truncated random variables"};
    app.require_subcommand(1);
    Options o;

    auto* bound = app.add_subcommand("bound", "Compute one bound and print a key=value record");
    bound->add_option("--kind", o.kind, "universal-winsor, fixed-c-winsor or trunc")->required();
    bound->add_option("--c", o.c_values, "Tilt c")->delimiter(',');
    bound->add_option("--sigma", o.sigma, "Standard-deviation budget sigma")->required();
    bound->add_option("--cut", o.cut, "Cut level y")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Sweep sigma and write a CSV table");
    sweep->add_option("--kind", o.kind,
                      "universal-winsor, fixed-c-winsor, trunc, ratio-universal-over-fixed, "
                      "ratio-trunc-over-winsor")
        ->required();
    sweep->add_option("--c", o.c_values, "Comma-separated c values")->delimiter(',');
    sweep->add_option("--sigma-min", o.sigma_min)->capture_default_str();
    sweep->add_option("--sigma-max", o.sigma_max)->capture_default_str();
    sweep->add_option("--points", o.points)->capture_default_str();
    sweep->add_option("--scale", o.scale, "log or linear")->capture_default_str();
    sweep->add_option("--cut", o.cut)->capture_default_str();
    sweep->add_option("--out", o.out, "Output CSV path (stdout if omitted)");

    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    verify->add_option("--suite", o.suite, "roots, ordering, certificates, oracle, asymptotics or all")
        ->capture_default_str();
    verify->add_option("--seed", o.seed, "Seed for the random three-point probes")->capture_default_str();

    auto* collapse = app.add_subcommand("collapse-demo", "Show truncated moments collapsing to 0");
    collapse->add_option("--sigma", o.sigma)->capture_default_str();
    collapse->add_option("--steps", o.steps)->capture_default_str();

    auto* constants = app.add_subcommand("constants", "Print t_*, -ln t_*, e^2 and (1 - t_*) t_*");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    try {
        const RootTolerances tol = tolerances_from_env();
        if (bound->parsed()) return cmd_bound(o, tol);
        if (sweep->parsed()) return cmd_sweep(o, tol);
        if (verify->parsed()) return cmd_verify(o, tol);
        if (collapse->parsed()) return cmd_collapse(o, tol);
        if (constants->parsed()) return cmd_constants(tol);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const CaseViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitInvalid;
}
