#include "wbounds/two_point.hpp"

#include "wbounds/errors.hpp"

#include <cmath>

namespace wbounds {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void BoundQuery::validate() const {
    detail::require(positive_finite(c), "c must be positive and finite");
    detail::require(positive_finite(sigma), "sigma must be positive and finite");
    detail::require(positive_finite(cut), "cut level must be positive and finite");
}

BoundQuery BoundQuery::normalized() const {
    validate();
    const BoundQuery n{c * cut, sigma / cut, 1.0};
    detail::require(positive_finite(n.c) && positive_finite(n.sigma * n.sigma),
                    "c * cut and (sigma / cut)^2 must be positive and representable");
    return n;
}

TwoPointDistribution TwoPointDistribution::make(double a, double b) {
    detail::require(positive_finite(a), "two-point law: a must be positive and finite");
    detail::require(positive_finite(b), "two-point law: b must be positive and finite");
    const double total = a + b;
    return TwoPointDistribution{a, b, b / total, a / total};
}

TwoPointDistribution TwoPointDistribution::scaled(double y) const {
    return make(a * y, b * y);
}

}  // namespace wbounds
