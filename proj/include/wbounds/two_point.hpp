#pragma once

namespace wbounds {

/// A bound request: tilt parameter c, second-moment budget sigma (E X^2 <=
/// sigma^2) and cut level y of the Winsorization / truncation.
struct BoundQuery {
    double c = 1.0;
    double sigma = 1.0;
    double cut = 1.0;

    /// Throws ValidationError unless c, sigma and cut are positive and finite.
    void validate() const;

    /// The equivalent query at cut level 1: (c * y, sigma / y, 1).
    [[nodiscard]] BoundQuery normalized() const;
};

/// The zero-mean law on {-a, b}: mass b/(a+b) at -a and a/(a+b) at b.
/// Its second moment is a*b.
struct TwoPointDistribution {
    double a = 0.0;
    double b = 0.0;
    double p_neg = 0.0;
    double p_pos = 0.0;

    /// Throws ValidationError unless a and b are positive and finite.
    static TwoPointDistribution make(double a, double b);

    [[nodiscard]] double mean() const { return -a * p_neg + b * p_pos; }
    [[nodiscard]] double second_moment() const { return a * a * p_neg + b * b * p_pos; }

    /// The same law expressed at scale y: support {-a*y, b*y}.
    [[nodiscard]] TwoPointDistribution scaled(double y) const;
};

}  // namespace wbounds
