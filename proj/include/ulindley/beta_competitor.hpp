#pragma once

#include "ulindley/estimation.hpp"
#include "ulindley/sample.hpp"

#include <optional>

namespace ulindley {

/// Inflated beta in the mean-precision parameterization: the interior
/// component is Beta(mu phi, (1-mu) phi). ZIB when `p` is empty (mass alpha
/// at 0), ZOIB otherwise (alpha(1-p) at 0, alpha p at 1).
class InflatedBetaParams {
public:
    InflatedBetaParams(double alpha, double mu, double phi, std::optional<double> p = std::nullopt);

    double alpha() const noexcept { return alpha_; }
    double mu() const noexcept { return mu_; }
    double phi() const noexcept { return phi_; }
    std::optional<double> p() const noexcept { return p_; }
    bool zero_and_one() const noexcept { return p_.has_value(); }

    double shape_a() const noexcept { return mu_ * phi_; }
    double shape_b() const noexcept { return (1.0 - mu_) * phi_; }
    double mass_at_zero() const noexcept { return p_ ? alpha_ * (1.0 - *p_) : alpha_; }
    double mass_at_one() const noexcept { return p_ ? alpha_ * *p_ : 0.0; }

private:
    double alpha_;
    double mu_;
    double phi_;
    std::optional<double> p_;
};

/// log of the Beta(a, b) density on (0,1).
double beta_log_pdf(double a, double b, double y);

double beta_inflated_density(const InflatedBetaParams& params, double y);
double beta_inflated_cdf(const InflatedBetaParams& params, double y);

/// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// Log-likelihood of the interior observations under Beta(mu phi, (1-mu) phi).
double beta_interior_log_likelihood(const ProportionSample& sample, double mu, double phi);

/// Gradient and Hessian of beta_interior_log_likelihood in (mu, phi).
struct BetaDerivatives {
    Eigen::Vector2d gradient;
    Eigen::Matrix2d hessian;
};
BetaDerivatives beta_interior_derivatives(const ProportionSample& sample, double mu, double phi);

/// Maximum likelihood fit of ZIB or ZOIB. alpha (and p) are the same
/// counting estimators as the unit Lindley fits. (mu, phi) come from
/// Newton iterations with step halving started at the interior method of
/// moments; if 100 steps do not bring the gradient norm under 1e-8 a
/// coordinate-wise golden-section search runs for 200 sweeps and Newton
/// restarts from there. Standard errors for (mu, phi) come from the
/// observed information at the optimum.
///
/// Throws EstimationError on boundary samples or fewer than two interior
/// values, ConvergenceError when no stationary point is reached.
FitReport fit_beta_inflated(const ProportionSample& sample, ModelKind kind, double level = 0.95);

}  // namespace ulindley
