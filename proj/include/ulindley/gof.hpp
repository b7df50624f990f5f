#pragma once

#include "ulindley/beta_competitor.hpp"
#include "ulindley/inflated.hpp"
#include "ulindley/sample.hpp"

#include <functional>

namespace ulindley {

enum class KsSide { LeftLimit, RightValue };

struct KsResult {
    double statistic;
    /// Location of the supremum.
    double at;
    /// Whether the supremum is attained just left of `at` or at `at`.
    KsSide side;
};

/// F_n(x) = #{values <= x} / n.
double empirical_cdf(const ProportionSample& sample, double x);

/// A right-continuous cdf on [0,1] that is continuous on (0,1) and may
/// jump at the endpoints. The left limit at an endpoint is the value there
/// minus its atom.
struct ModelCdf {
    std::function<double(double)> cdf;
    double atom_at_zero = 0.0;
    double atom_at_one = 0.0;

    double operator()(double x) const { return cdf(x); }
    double left_limit(double x) const;
};

ModelCdf model_cdf(const InflatedParams& params);
ModelCdf model_cdf(const ZeroOneInflatedParams& params);
ModelCdf model_cdf(const InflatedBetaParams& params);

/// The cdf of the distribution a fit report describes, at its estimates.
ModelCdf fitted_model_cdf(const FitReport& report);

/// Kolmogorov-Smirnov distance sup_x |F_n(x) - F(x)|. Because both
/// functions are monotone and F_n is flat between sample points, the
/// supremum is the largest gap on either side of a jump: the value at and
/// the left limit at every distinct sample value, at 0 and at 1.
///
/// Throws DomainError if `model` decreases or leaves [0,1] at any of those
/// points.
KsResult ks_statistic(const ProportionSample& sample, const ModelCdf& model);

}  // namespace ulindley
