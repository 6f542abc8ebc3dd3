#include "wbounds/errors.hpp"
#include "wbounds/roots.hpp"
#include "wbounds/winsor.hpp"

#include "bisection_oracle.hpp"
#include "gen.hpp"
#include "reference_values.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace wbounds;

namespace {

double f_t(double t) { return std::log(t) + 2.0 * (1.0 - t); }

}  // namespace

TEST(FindBracket, WinsorEquationAtUnitSigma) {
    const auto f = [](double a) { return a * b_star(a, 1.0) - 1.0; };
    const Bracket b = find_bracket(f, 0.5);
    EXPECT_TRUE(b.valid());
    EXPECT_LT(b.lo, ref::a_c_sigma_1_1);
    EXPECT_GT(b.hi, ref::a_c_sigma_1_1);
}

TEST(FindBracket, TStarInsideUnitInterval) {
    const Bracket b = find_bracket(f_t, 0.5, SearchDirection::Downward, {1e-6, 1.0 - 1e-6});
    EXPECT_TRUE(b.valid());
    EXPECT_LE(b.lo, 0.2032);
    EXPECT_GE(b.hi, 0.2031);
    EXPECT_LT(b.hi, 1.0);
}

TEST(FindBracket, NoSignChangeIsReported) {
    EXPECT_THROW(find_bracket([](double x) { return x; }, 1.0), NoSignChange);
}

TEST(FindBracket, NonFiniteProbeIsReported) {
    const auto f = [](double x) { return x < 0.25 ? std::numeric_limits<double>::quiet_NaN() : 1.0; };
    EXPECT_THROW(find_bracket(f, 1.0), NonFinite);
}

TEST(FindBracket, RejectsBadSeed) {
    EXPECT_THROW(find_bracket([](double x) { return x - 1; }, 0.0), ValidationError);
    EXPECT_THROW(find_bracket([](double x) { return x - 1; }, -1.0), ValidationError);
}

TEST(FindBracket, UpwardOnlyExpandsUp) {
    const Bracket b = find_bracket([](double x) { return x - 1000.0; }, 1.0, SearchDirection::Upward);
    EXPECT_TRUE(b.valid());
    EXPECT_GE(b.lo, 1.0);
    EXPECT_THROW(find_bracket([](double x) { return x - 1e-3; }, 1.0, SearchDirection::Upward), NoSignChange);
}

TEST(FindBracket, RespectsProbeLimits) {
    // The only sign change is at 10, outside the allowed range.
    EXPECT_THROW(find_bracket([](double x) { return x - 10.0; }, 1.0, SearchDirection::Outward, {0.5, 4.0}),
                 NoSignChange);
}

TEST(FindBracket, SkipsExactZeroProbe) {
    // f(1) == 0 exactly at the seed; the bracket must still straddle a sign change.
    const Bracket b = find_bracket([](double x) { return x - 1.0; }, 1.0);
    EXPECT_TRUE(b.valid());
}

TEST(SolveRoot, TStar) {
    const RootResult r = solve_root(f_t, Bracket{0.1, 0.5, f_t(0.1), f_t(0.5)});
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.root, ref::t_star, 1e-12);
    EXPECT_LE(std::abs(r.residual), 1e-11);
}

TEST(SolveRoot, Linear) {
    const auto f = [](double x) { return x - 1.0; };
    const RootResult r = solve_root(f, Bracket{0.5, 2.0, f(0.5), f(2.0)});
    EXPECT_NEAR(r.root, 1.0, 1e-12);
}

TEST(SolveRoot, AcAtUnitC) {
    const auto f = [](double a) { return 2.0 * std::expm1(a) - a - 1.0; };
    const RootResult r = solve_root(f, Bracket{0.1, 1.0, f(0.1), f(1.0)});
    EXPECT_NEAR(r.root, ref::A_1, 1e-12);
    EXPECT_NEAR(r.root, oracle::A_c(1.0), 1e-12);
}

TEST(SolveRoot, RejectsInvalidBracket) {
    const auto f = [](double x) { return x - 1.0; };
    EXPECT_THROW(solve_root(f, Bracket{2.0, 3.0, f(2.0), f(3.0)}), ValidationError);
    EXPECT_THROW(solve_root(f, Bracket{3.0, 0.5, f(3.0), f(0.5)}), ValidationError);
    EXPECT_THROW(solve_root(f, Bracket{0.5, 2.0, f(0.5), f(2.0)}, {0.0, 0.0}), ValidationError);
}

TEST(SolveRoot, Deterministic) {
    const Bracket b{0.1, 0.5, f_t(0.1), f_t(0.5)};
    const RootResult r1 = solve_root(f_t, b);
    const RootResult r2 = solve_root(f_t, b);
    EXPECT_EQ(r1.root, r2.root);
    EXPECT_EQ(r1.residual, r2.residual);
    EXPECT_EQ(r1.iterations, r2.iterations);
}

TEST(SolveRoot, DiscontinuousSignChangeStillConverges) {
    const auto step = [](double x) { return x < 0.3 ? -1.0 : 1.0; };
    const RootResult r = solve_root(step, Bracket{0.0, 1.0, -1.0, 1.0});
    EXPECT_NEAR(r.root, 0.3, 1e-11);
}

TEST(SolvePositiveRoot, ResolvesTinyAndHugeRoots) {
    for (const double target : {1e-10, 3e-7, 1.0, 5e4, 1e12}) {
        const auto f = [target](double x) { return std::log(x / target); };
        const RootResult r = solve_positive_root(f, 1.0, SearchDirection::Outward, {});
        EXPECT_NEAR(r.root / target, 1.0, 1e-11) << target;
    }
}

TEST(SolvePositiveRoot, FromKnownBracket) {
    const auto f = [](double x) { return x * x - 2.0; };
    const RootResult r = solve_positive_root(f, Bracket{1.0, 2.0, f(1.0), f(2.0)});
    EXPECT_NEAR(r.root, std::sqrt(2.0), 1e-12);
    EXPECT_GE(r.root, 1.0);
    EXPECT_LE(r.root, 2.0);
}

// Property: for random increasing functions with a root r, the solver returns
// a point inside the bracket within tolerance of r.
TEST(SolveRootProperty, RandomMonotoneCubics) {
    gen::Gen g(7);
    for (int i = 0; i < gen::kCases; ++i) {
        const double r = g.uniform(-5.0, 5.0);
        const double k = g.log_uniform(1e-3, 1e3);
        const auto f = [r, k](double x) { return k * (x - r) + (x - r) * (x - r) * (x - r); };
        const double lo = r - g.uniform(0.01, 10.0);
        const double hi = r + g.uniform(0.01, 10.0);
        const RootResult res = solve_root(f, Bracket{lo, hi, f(lo), f(hi)});
        ASSERT_TRUE(res.converged);
        ASSERT_GE(res.root, lo);
        ASSERT_LE(res.root, hi);
        ASSERT_NEAR(res.root, r, 1e-11 * std::max(1.0, std::abs(r)));
    }
}

// Property: find_bracket from any seed within 30 octaves of the root finds a
// valid bracket that contains it.
TEST(FindBracketProperty, SeedsFarFromRoot) {
    gen::Gen g(11);
    for (int i = 0; i < gen::kCases; ++i) {
        const double root = g.log_uniform(1e-8, 1e8);
        const double seed = root * std::exp2(g.uniform(-30.0, 30.0));
        const auto f = [root](double x) { return std::log(x) - std::log(root); };
        const Bracket b = find_bracket(f, seed);
        ASSERT_TRUE(b.valid());
        ASSERT_LE(b.lo, root * (1 + 1e-15));
        ASSERT_GE(b.hi, root * (1 - 1e-15));
    }
}
