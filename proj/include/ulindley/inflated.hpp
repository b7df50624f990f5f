#pragma once

#include "ulindley/random.hpp"
#include "ulindley/sample.hpp"
#include "ulindley/unit_lindley.hpp"

#include <cstddef>
#include <vector>

namespace ulindley {

enum class InflationPoint { Zero, One };

inline double point_value(InflationPoint point) noexcept {
    return point == InflationPoint::Zero ? 0.0 : 1.0;
}

/// ULZI (point = Zero) or ULOI (point = One): mass alpha at the point,
/// (1-alpha) unit Lindley(theta) on (0,1).
class InflatedParams {
public:
    InflatedParams(double alpha, double theta, InflationPoint point);

    double alpha() const noexcept { return alpha_; }
    double theta() const noexcept { return base_.theta(); }
    InflationPoint point() const noexcept { return point_; }
    const UnitLindleyParams& base() const noexcept { return base_; }

private:
    double alpha_;
    UnitLindleyParams base_;
    InflationPoint point_;
};

/// ULZOI: P(Y=1) = alpha p, P(Y=0) = alpha (1-p), (1-alpha) unit Lindley
/// on (0,1).
class ZeroOneInflatedParams {
public:
    ZeroOneInflatedParams(double alpha, double p, double theta);

    double alpha() const noexcept { return alpha_; }
    double p() const noexcept { return p_; }
    double theta() const noexcept { return base_.theta(); }
    const UnitLindleyParams& base() const noexcept { return base_; }

    double mass_at_zero() const noexcept { return alpha_ * (1.0 - p_); }
    double mass_at_one() const noexcept { return alpha_ * p_; }

private:
    double alpha_;
    double p_;
    UnitLindleyParams base_;
};

struct MeanVariance {
    double mean;
    double variance;
};

// Mixed density: the atom mass at an inflation point, (1-alpha) f(y) on
// (0,1), zero at a non-inflated endpoint. DomainError outside [0,1].
double inflated_density(const InflatedParams& params, double y);
double zoi_density(const ZeroOneInflatedParams& params, double y);

// Right-continuous mixed cdfs.
double inflated_cdf(const InflatedParams& params, double y);
double zoi_cdf(const ZeroOneInflatedParams& params, double y);

MeanVariance inflated_mean_var(const InflatedParams& params);
MeanVariance zoi_mean_var(const ZeroOneInflatedParams& params);

/// log of the mixed density at one point; -inf where the density is zero.
double log_density(const InflatedParams& params, double y);
double log_density(const ZeroOneInflatedParams& params, double y);

/// Log-likelihood from the cached statistics, l1(alpha) + l2(theta) for
/// ULZI/ULOI and l1(alpha) + l2(p) + l3(theta) for ULZOI. Throws
/// ModelMismatchError if the sample has an observation at a point of zero
/// probability (a 1 under ULZI, a 0 under ULOI).
double log_likelihood(const InflatedParams& params, const ProportionSample& sample);
double log_likelihood(const ZeroOneInflatedParams& params, const ProportionSample& sample);

/// n i.i.d. draws: U < alpha gives the point, otherwise a unit Lindley draw.
std::vector<double> sample_inflated(const InflatedParams& params, std::size_t n, Rng& rng);

/// n i.i.d. draws by composition: U <= alpha(1-p) gives 0, U <= alpha
/// gives 1, otherwise a unit Lindley draw.
std::vector<double> sample_zoi(const ZeroOneInflatedParams& params, std::size_t n, Rng& rng);

/// Canonical exponential-family form of one observation:
///   log density(y) = eta . T(y) - log_partition + log_carrier(y).
///
/// ULZI/ULOI: T = (1{y=c}, y/(1-y) 1{y interior}),
///            eta = (logit alpha - log(theta^2/(1+theta)), -theta).
/// ULZOI:     T = (1{y in {0,1}}, y 1{y in {0,1}}, y/(1-y) 1{y interior}),
///            eta = (logit alpha + log(1-p) - log(theta^2/(1+theta)),
///                   logit p, -theta).
/// In both, log_partition = -log(1-alpha) - log(theta^2/(1+theta)) and the
/// carrier is (1-y)^{-3} on the interior and 1 at the atoms.
struct ExponentialFamilyForm {
    std::vector<double> eta;
    std::vector<double> stats;
    double log_partition;
    double log_carrier;
};

ExponentialFamilyForm exponential_family_form(const InflatedParams& params, double y);
ExponentialFamilyForm exponential_family_form(const ZeroOneInflatedParams& params, double y);

struct ExponentialFamilyCheck {
    std::vector<double> eta;
    std::vector<double> stats;
    /// [log f(params,y) - log f(other,y)]
    ///   - [(eta(params) - eta(other)) . T(y) - (A(params) - A(other))]
    double check;
};

/// Natural parameters and sufficient statistics at `params`, plus the
/// residual of the log-density-difference identity against `other`.
ExponentialFamilyCheck natural_params_and_suffstats(const InflatedParams& params, double y,
                                                    const InflatedParams& other);
ExponentialFamilyCheck natural_params_and_suffstats(const ZeroOneInflatedParams& params, double y,
                                                    const ZeroOneInflatedParams& other);

}  // namespace ulindley
