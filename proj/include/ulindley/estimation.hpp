#pragma once

#include "ulindley/inflated.hpp"
#include "ulindley/sample.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ulindley {

enum class ModelKind { ULZI, ULOI, ULZOI, ZIB, ZOIB };
enum class Method { MLE, BCMLE, CME };

std::string_view to_string(ModelKind model);
std::string_view to_string(Method method);

/// Wald interval. Not truncated to the parameter space; the flag records
/// when it leaves it.
struct Interval {
    double lo;
    double hi;
    double level;
    bool exits_parameter_space = false;
};

struct ParameterEstimate {
    std::string name;
    double estimate;
    std::optional<double> std_error;
    std::optional<Interval> ci;
};

/// Result of fitting one model by one method.
struct FitReport {
    ModelKind model;
    Method method;
    std::size_t n = 0;
    std::vector<ParameterEstimate> parameters;  // alpha, [p], theta | alpha, [p], mu, phi
    double log_lik = 0.0;
    Eigen::MatrixXd fisher;  // same parameter order
    std::vector<std::string> warnings;

    const ParameterEstimate& at(std::string_view name) const;
    double estimate(std::string_view name) const { return at(name).estimate; }
    bool has(std::string_view name) const;
};

/// Validates `values` and caches the statistics (a ProportionSample).
ProportionSample suff_stats(std::vector<double> values);

/// U_theta = m (2+theta)/(theta(1+theta)) - S.
double theta_score(double m, double odds_sum, double theta);

/// Positive root of S theta^2 + (S-m) theta - 2m = 0, in a cancellation-free
/// form. Requires m > 0, S > 0.
double theta_mle(double m, double odds_sum);

FitReport mle_inflated(const ProportionSample& sample, InflationPoint point);
FitReport mle_zoi(const ProportionSample& sample);

/// 1/mean(interior) - 1.
double cme_theta(const ProportionSample& sample);

/// First-order Cox-Snell bias of theta-hat given m interior observations:
/// kappa_111 / (2 kappa_11^2) with kappa_11 = m(1/(1+t)^2 - 2/t^2) and
/// kappa_111 = m(4/t^3 - 2/(1+t)^3). Positive for all t > 0.
double cox_snell_bias(double theta, double m);

struct BiasCorrectedTheta {
    double value;
    double mle;
    /// The corrected value was not positive; `value` holds the MLE instead.
    bool fell_back_to_mle;
};

/// theta-hat - b(theta-hat).
BiasCorrectedTheta bcmle_theta(const ProportionSample& sample);

/// Expected information for (alpha, theta).
Eigen::Matrix2d fisher_inflated(const InflatedParams& params, std::size_t n);
/// Expected information for (alpha, p, theta).
Eigen::Matrix3d fisher_zoi(const ZeroOneInflatedParams& params, std::size_t n);

/// Fills `ci` for every parameter with a standard error:
/// estimate -/+ z_{(1+level)/2} SE.
FitReport confidence_intervals(FitReport report, double level);

/// Fits ULZI, ULOI or ULZOI by the given method and attaches intervals at
/// `level`. CME and BCMLE replace only theta; alpha and p stay the MLEs.
FitReport fit_unit_lindley(const ProportionSample& sample, ModelKind model, Method method,
                           double level = 0.95);

}  // namespace ulindley
