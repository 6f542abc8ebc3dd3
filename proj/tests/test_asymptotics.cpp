#include "wbounds/asymptotics.hpp"
#include "wbounds/errors.hpp"
#include "wbounds/winsor.hpp"

#include "bisection_oracle.hpp"
#include "reference_values.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace wbounds;

TEST(FOfT, Values) {
    EXPECT_EQ(f_of_t(1.0), 0.0);
    EXPECT_NEAR(f_of_t(0.5), std::log(0.5) + 1.0, 1e-15);
    EXPECT_NEAR(f_of_t(ref::t_star), 0.0, 1e-15);
    EXPECT_THROW(f_of_t(0.0), ValidationError);
}

TEST(TStar, Constants) {
    const AsymptoticConstants k = solve_t_star();
    EXPECT_NEAR(k.t_star, ref::t_star, 1e-13);
    EXPECT_NEAR(k.t_star, oracle::t_star(), 1e-13);
    EXPECT_NEAR(k.minus_ln_t_star, ref::minus_ln_t_star, 1e-12);
    EXPECT_NEAR(2.0 * (1.0 - k.t_star), k.minus_ln_t_star, 1e-10);
    EXPECT_NEAR(k.small_sigma_universal_slope, ref::universal_small_slope, 1e-13);
    EXPECT_DOUBLE_EQ(k.large_sigma_universal_coeff, std::exp(2.0));
    EXPECT_EQ(std::floor(k.t_star * 1000.0) / 1000.0, 0.203);
    EXPECT_EQ(std::floor(k.minus_ln_t_star * 1000.0) / 1000.0, 1.593);
}

TEST(TStar, CachedCopyMatches) {
    EXPECT_EQ(asymptotic_constants().t_star, solve_t_star().t_star);
    EXPECT_EQ(&asymptotic_constants(), &asymptotic_constants());
}

TEST(Slopes, Values) {
    EXPECT_NEAR(winsor_small_sigma_slope(1.0), -1.0 / (4.0 * (std::exp(1.0) - 1.0)), 1e-15);
    EXPECT_NEAR(winsor_small_sigma_slope(1e-8) / 1e-8, -0.25, 1e-8);
    EXPECT_NEAR(winsor_small_sigma_slope(ref::minus_ln_t_star), ref::universal_small_slope, 1e-14);
    EXPECT_NEAR(winsor_large_sigma_coeff(2.0), std::exp(2.0), 1e-14);
    EXPECT_NEAR(winsor_large_sigma_coeff(1.0), 4.0 * std::exp(1.0), 1e-14);
    EXPECT_NEAR(winsor_large_sigma_coeff(4.0), std::exp(4.0) / 4.0, 1e-13);
    EXPECT_THROW(winsor_small_sigma_slope(0.0), ValidationError);
    EXPECT_THROW(winsor_large_sigma_coeff(-1.0), ValidationError);
}

TEST(Slopes, InfimaOverC) {
    double best = 0.0;
    double best_c = 0.0;
    for (int k = 1; k <= 200000; ++k) {
        const double c = k * 1e-4;
        if (winsor_small_sigma_slope(c) < best) {
            best = winsor_small_sigma_slope(c);
            best_c = c;
        }
    }
    EXPECT_NEAR(best_c, ref::minus_ln_t_star, 2e-4);
    EXPECT_NEAR(best, ref::universal_small_slope, 1e-8);
    for (const double c : {1.0, 1.9, 2.1, 3.0}) {
        EXPECT_GT(winsor_large_sigma_coeff(c), std::exp(2.0));
    }
}

TEST(Asymptotes, Values) {
    EXPECT_NEAR(trunc_asymptote(1.0, 0.01, SigmaRegime::Small), 0.9999, 1e-15);
    EXPECT_NEAR(trunc_asymptote(2.0, std::exp(1.0), SigmaRegime::Large), std::exp(-2.0), 1e-15);
    EXPECT_NEAR(universal_asymptote(0.01, SigmaRegime::Small), 1.0 - 1.6190255947e-5, 1e-14);
    EXPECT_NEAR(winsor_asymptote(2.0, std::exp(1.0), SigmaRegime::Large), 1.0, 1e-14);
    EXPECT_NEAR(winsor_asymptote(1.0, 0.1, SigmaRegime::Small), 1.0 + 0.01 * winsor_small_sigma_slope(1.0), 1e-15);
    EXPECT_THROW(universal_asymptote(0.0, SigmaRegime::Large), ValidationError);
    EXPECT_THROW(trunc_asymptote(0.0, 1.0, SigmaRegime::Large), ValidationError);
}

TEST(Asymptotes, RatioAtLargeSigma) {
    const double s = 1e10;
    const double ratio = universal_asymptote(s, SigmaRegime::Large) / lower_bound_universal(s).bound;
    EXPECT_NEAR(ratio, ref::ratio_1e10, 1e-10);
    EXPECT_EQ(std::floor(ratio * 1000.0) / 1000.0, 1.201);
}

TEST(Asymptotes, UniversalSlowConvergence) {
    double prev = 1.0;
    for (const double s : {1e4, 1e6, 1e8, 1e10}) {
        const double r = lower_bound_universal(s).bound / universal_asymptote(s, SigmaRegime::Large);
        EXPECT_LT(std::abs(r - 1.0), prev) << s;
        EXPECT_LT(r, 1.0);
        prev = std::abs(r - 1.0);
    }
}
