#pragma once

// Tiny hand-rolled generators for property tests.

#include <cmath>
#include <cstdint>
#include <random>

namespace gen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    bool coin() { return uniform(0.0, 1.0) < 0.5; }

private:
    std::mt19937_64 rng_;
};

inline constexpr int kCases = 200;

}  // namespace gen
