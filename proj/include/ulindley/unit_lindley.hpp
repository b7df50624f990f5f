#pragma once

#include "ulindley/random.hpp"

namespace ulindley {

/// Shape parameter of the unit Lindley law on (0,1). Construction validates
/// theta > 0.
class UnitLindleyParams {
public:
    explicit UnitLindleyParams(double theta);

    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

namespace unit_lindley {

/// log f(x; theta) = 2 log theta - log(1+theta) - 3 log(1-x) - theta x/(1-x).
/// Throws DomainError for x outside (0,1).
double log_pdf(const UnitLindleyParams& params, double x);

/// f(x; theta) = theta^2/(1+theta) (1-x)^{-3} exp(-theta x/(1-x)).
double pdf(const UnitLindleyParams& params, double x);

/// F(x; theta) = 1 - [1 + theta x/((1+theta)(1-x))] exp(-theta x/(1-x))
/// on (0,1); 0 at and below 0, 1 at and above 1.
double cdf(const UnitLindleyParams& params, double x);

/// Inverse of cdf by bracketed root finding. u in (0,1).
double quantile(const UnitLindleyParams& params, double u);

/// E[Y^r]. Closed forms for r = 1, 2; tanh-sinh quadrature otherwise.
double raw_moment(const UnitLindleyParams& params, int r);

/// One draw: X ~ Lindley(theta) as the mixture Exp(theta) w.p.
/// theta/(1+theta), else Gamma(2, theta); returns X/(1+X).
double sample(const UnitLindleyParams& params, Rng& rng);

}  // namespace unit_lindley
}  // namespace ulindley
