#include "ulindley/unit_lindley.hpp"

#include "ulindley/errors.hpp"
#include "ulindley/special_math.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

namespace ulindley {

UnitLindleyParams::UnitLindleyParams(double theta) : theta_(theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("unit Lindley: theta must be a positive finite number");
    }
}

namespace unit_lindley {

double log_pdf(const UnitLindleyParams& params, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("unit Lindley pdf: x must lie in (0,1)");
    const double theta = params.theta();
    const double one_minus = 1.0 - x;
    return 2.0 * std::log(theta) - std::log1p(theta) - 3.0 * std::log(one_minus) -
           theta * x / one_minus;
}

double pdf(const UnitLindleyParams& params, double x) { return std::exp(log_pdf(params, x)); }

double cdf(const UnitLindleyParams& params, double x) {
    if (!(x > 0.0)) return 0.0;  // also maps NaN to 0
    if (x >= 1.0) return 1.0;
    const double theta = params.theta();
    const double z = theta * x / (1.0 - x);
    // 1 - (1 + z/(1+theta)) e^{-z}, written to keep precision as x -> 0
    return -std::expm1(-z) - z / (1.0 + theta) * std::exp(-z);
}

double quantile(const UnitLindleyParams& params, double u) {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("unit Lindley quantile: u must lie in (0,1)");
    BracketedRootProblem problem{
        [&](double x) { return cdf(params, x) - u; },
        0.0,
        1.0,
        1e-15,
    };
    return solve_bracketed(problem);
}

double raw_moment(const UnitLindleyParams& params, int r) {
    if (r < 1) throw DomainError("unit Lindley raw_moment: r must be >= 1");
    const double theta = params.theta();
    if (r == 1) return 1.0 / (1.0 + theta);
    if (r == 2) {
        return (theta * theta * exp_integral_e1_scaled(theta) - theta + 1.0) / (1.0 + theta);
    }
    // E[Y^r] = r/(1+theta) int_0^1 x^{r-1} (1+theta-x)/(1-x) exp(-theta x/(1-x)) dx
    auto integrand = [theta, r](double x) {
        if (x >= 1.0) return 0.0;
        const double one_minus = 1.0 - x;
        return std::pow(x, r - 1) * (1.0 + theta - x) / one_minus * std::exp(-theta * x / one_minus);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double integral = integrator.integrate(integrand, 0.0, 1.0, 1e-13);
    return r / (1.0 + theta) * integral;
}

double sample(const UnitLindleyParams& params, Rng& rng) {
    const double theta = params.theta();
    const double pick = uniform_open01(rng);
    double x = exponential(rng, theta);
    if (pick >= theta / (1.0 + theta)) x += exponential(rng, theta);
    // x/(1+x) rounds to 1 only for x > 2^53, i.e. theta below ~1e-14.
    return std::min(x / (1.0 + x), std::nextafter(1.0, 0.0));
}

}  // namespace unit_lindley
}  // namespace ulindley
