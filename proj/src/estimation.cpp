#include "ulindley/estimation.hpp"

#include "ulindley/errors.hpp"
#include "ulindley/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ulindley {

std::string_view to_string(ModelKind model) {
    switch (model) {
        case ModelKind::ULZI: return "ULZI";
        case ModelKind::ULOI: return "ULOI";
        case ModelKind::ULZOI: return "ULZOI";
        case ModelKind::ZIB: return "ZIB";
        case ModelKind::ZOIB: return "ZOIB";
    }
    return "?";
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::MLE: return "MLE";
        case Method::BCMLE: return "BCMLE";
        case Method::CME: return "CME";
    }
    return "?";
}

const ParameterEstimate& FitReport::at(std::string_view name) const {
    for (const auto& p : parameters) {
        if (p.name == name) return p;
    }
    throw DomainError("fit report has no parameter named '" + std::string(name) + "'");
}

bool FitReport::has(std::string_view name) const {
    return std::any_of(parameters.begin(), parameters.end(),
                       [&](const ParameterEstimate& p) { return p.name == name; });
}

ProportionSample suff_stats(std::vector<double> values) { return ProportionSample(std::move(values)); }

double theta_score(double m, double odds_sum, double theta) {
    return m * (2.0 + theta) / (theta * (1.0 + theta)) - odds_sum;
}

double theta_mle(double m, double odds_sum) {
    if (!(m > 0.0)) {
        throw EstimationError(EstimationError::Reason::NoInteriorData,
                              "no interior observations: theta is not estimable");
    }
    if (!(odds_sum > 0.0)) {
        throw EstimationError(EstimationError::Reason::NoInteriorData,
                              "interior observations sum to zero odds: theta is not estimable");
    }
    const double diff = m - odds_sum;
    const double root = std::sqrt(diff * diff + 8.0 * m * odds_sum);
    // The two algebraic forms of the positive root; pick the one without
    // subtractive cancellation.
    double theta = diff >= 0.0 ? (diff + root) / (2.0 * odds_sum) : 4.0 * m / (root - diff);

    if (std::abs(theta_score(m, odds_sum, theta)) > 1e-8 * m) {
        BracketedRootProblem problem{[&](double t) { return theta_score(m, odds_sum, t); },
                                     theta * 0.5, theta * 2.0, 1e-15 * theta};
        theta = solve_bracketed(problem);
    }
    return theta;
}

namespace {

void require_theta_estimable(const ProportionSample& sample) {
    if (sample.interior() == 0) {
        throw EstimationError(EstimationError::Reason::NoInteriorData,
                              "no interior observations in (0,1): theta is not estimable");
    }
}

void attach_standard_errors(FitReport& report, const std::vector<bool>& with_se) {
    const Eigen::MatrixXd inverse = report.fisher.inverse();
    for (std::size_t i = 0; i < report.parameters.size(); ++i) {
        if (with_se[i]) {
            const auto k = static_cast<Eigen::Index>(i);
            report.parameters[i].std_error = std::sqrt(inverse(k, k));
        }
    }
}

void check_inflated_preconditions(const ProportionSample& sample, InflationPoint point) {
    const bool zero = point == InflationPoint::Zero;
    const std::size_t at_point = zero ? sample.zeros() : sample.ones();
    const std::size_t opposite = zero ? sample.ones() : sample.zeros();
    const char* model = zero ? "ULZI" : "ULOI";
    if (opposite > 0) {
        throw EstimationError(EstimationError::Reason::OppositeEndpoint,
                              std::string("sample contains ") + (zero ? "ones" : "zeros") + ", which " +
                                  model + " gives probability zero; fit ULZOI");
    }
    if (at_point == 0) {
        throw EstimationError(EstimationError::Reason::NoneAtInflationPoint,
                              std::string("sample has no ") + (zero ? "zeros" : "ones") +
                                  ": alpha-hat would be 0, on the boundary of (0,1)");
    }
    if (at_point == sample.n()) {
        throw EstimationError(EstimationError::Reason::AllAtInflationPoint,
                              std::string("every observation equals ") + (zero ? "0" : "1") +
                                  ": alpha-hat would be 1, on the boundary of (0,1)");
    }
    require_theta_estimable(sample);
}

void check_zoi_preconditions(const ProportionSample& sample) {
    if (sample.zeros() == 0) {
        throw EstimationError(EstimationError::Reason::NoZeros,
                              "sample has no zeros: p-hat would be 1, on the boundary; fit ULOI instead");
    }
    if (sample.ones() == 0) {
        throw EstimationError(EstimationError::Reason::NoOnes,
                              "sample has no ones: p-hat would be 0, on the boundary; fit ULZI instead");
    }
    if (sample.zeros() + sample.ones() == sample.n()) {
        throw EstimationError(EstimationError::Reason::AllAtInflationPoint,
                              "every observation is 0 or 1: alpha-hat would be 1, on the boundary of (0,1)");
    }
}

FitReport build_inflated_report(const ProportionSample& sample, InflationPoint point, double theta,
                                Method method) {
    const bool zero = point == InflationPoint::Zero;
    const std::size_t at_point = zero ? sample.zeros() : sample.ones();
    const double alpha = static_cast<double>(at_point) / static_cast<double>(sample.n());
    const InflatedParams params(alpha, theta, point);

    FitReport report;
    report.model = zero ? ModelKind::ULZI : ModelKind::ULOI;
    report.method = method;
    report.n = sample.n();
    report.parameters = {{"alpha", alpha, std::nullopt, std::nullopt},
                         {"theta", theta, std::nullopt, std::nullopt}};
    report.log_lik = log_likelihood(params, sample);
    report.fisher = fisher_inflated(params, sample.n());
    attach_standard_errors(report, {true, method != Method::CME});
    return report;
}

FitReport build_zoi_report(const ProportionSample& sample, double theta, Method method) {
    const auto n = static_cast<double>(sample.n());
    const auto atoms = static_cast<double>(sample.zeros() + sample.ones());
    const double alpha = atoms / n;
    const double p = static_cast<double>(sample.ones()) / atoms;
    const ZeroOneInflatedParams params(alpha, p, theta);

    FitReport report;
    report.model = ModelKind::ULZOI;
    report.method = method;
    report.n = sample.n();
    report.parameters = {{"alpha", alpha, std::nullopt, std::nullopt},
                         {"p", p, std::nullopt, std::nullopt},
                         {"theta", theta, std::nullopt, std::nullopt}};
    report.log_lik = log_likelihood(params, sample);
    report.fisher = fisher_zoi(params, sample.n());
    attach_standard_errors(report, {true, true, method != Method::CME});
    return report;
}

}  // namespace

FitReport mle_inflated(const ProportionSample& sample, InflationPoint point) {
    check_inflated_preconditions(sample, point);
    const double theta = theta_mle(static_cast<double>(sample.interior()), sample.odds_sum());
    return build_inflated_report(sample, point, theta, Method::MLE);
}

FitReport mle_zoi(const ProportionSample& sample) {
    check_zoi_preconditions(sample);
    const double theta = theta_mle(static_cast<double>(sample.interior()), sample.odds_sum());
    return build_zoi_report(sample, theta, Method::MLE);
}

double cme_theta(const ProportionSample& sample) {
    require_theta_estimable(sample);
    const double mean = sample.interior_sum() / static_cast<double>(sample.interior());
    return 1.0 / mean - 1.0;
}

double cox_snell_bias(double theta, double m) {
    const double t2 = theta * theta;
    const double u = 1.0 + theta;
    const double kappa_11 = m * (1.0 / (u * u) - 2.0 / t2);
    const double kappa_111 = m * (4.0 / (t2 * theta) - 2.0 / (u * u * u));
    return kappa_111 / (2.0 * kappa_11 * kappa_11);
}

BiasCorrectedTheta bcmle_theta(const ProportionSample& sample) {
    require_theta_estimable(sample);
    const auto m = static_cast<double>(sample.interior());
    const double mle = theta_mle(m, sample.odds_sum());
    const double corrected = mle - cox_snell_bias(mle, m);
    if (!(corrected > 0.0)) return {mle, mle, true};
    return {corrected, mle, false};
}

Eigen::Matrix2d fisher_inflated(const InflatedParams& params, std::size_t n) {
    const double alpha = params.alpha();
    const double theta = params.theta();
    const auto size = static_cast<double>(n);
    Eigen::Matrix2d k = Eigen::Matrix2d::Zero();
    k(0, 0) = size / (alpha * (1.0 - alpha));
    k(1, 1) = size * (1.0 - alpha) * (theta * theta + 4.0 * theta + 2.0) /
              (theta * theta * (1.0 + theta) * (1.0 + theta));
    return k;
}

Eigen::Matrix3d fisher_zoi(const ZeroOneInflatedParams& params, std::size_t n) {
    const double alpha = params.alpha();
    const double p = params.p();
    const double theta = params.theta();
    const auto size = static_cast<double>(n);
    Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
    k(0, 0) = size / (alpha * (1.0 - alpha));
    k(1, 1) = size * alpha / (p * (1.0 - p));
    k(2, 2) = size * (1.0 - alpha) * (theta * theta + 4.0 * theta + 2.0) /
              (theta * theta * (1.0 + theta) * (1.0 + theta));
    return k;
}

namespace {

// Open parameter spaces, used only for flagging intervals.
bool inside_parameter_space(std::string_view name, double v) {
    if (name == "alpha" || name == "p" || name == "mu") return v > 0.0 && v < 1.0;
    return v > 0.0;
}

}  // namespace

FitReport confidence_intervals(FitReport report, double level) {
    const double z = wald_z(level);
    for (auto& param : report.parameters) {
        if (!param.std_error) continue;
        const double half = z * *param.std_error;
        Interval ci{param.estimate - half, param.estimate + half, level, false};
        ci.exits_parameter_space = !inside_parameter_space(param.name, ci.lo) ||
                                   !inside_parameter_space(param.name, ci.hi);
        param.ci = ci;
    }
    return report;
}

FitReport fit_unit_lindley(const ProportionSample& sample, ModelKind model, Method method,
                           double level) {
    if (model != ModelKind::ULZI && model != ModelKind::ULOI && model != ModelKind::ULZOI) {
        throw DomainError("fit_unit_lindley: model must be ULZI, ULOI or ULZOI");
    }
    const bool zoi = model == ModelKind::ULZOI;
    const InflationPoint point = model == ModelKind::ULOI ? InflationPoint::One : InflationPoint::Zero;

    // Validate with the MLE preconditions first so every method reports the
    // same boundary errors.
    FitReport mle = zoi ? mle_zoi(sample) : mle_inflated(sample, point);
    if (method == Method::MLE) return confidence_intervals(std::move(mle), level);

    std::vector<std::string> warnings;
    double theta = 0.0;
    if (method == Method::CME) {
        theta = cme_theta(sample);
    } else {
        const BiasCorrectedTheta bc = bcmle_theta(sample);
        theta = bc.value;
        if (bc.fell_back_to_mle) {
            warnings.emplace_back("bias-corrected theta was not positive; reporting the MLE");
        }
    }
    FitReport report = zoi ? build_zoi_report(sample, theta, method)
                           : build_inflated_report(sample, point, theta, method);
    report.warnings = std::move(warnings);
    return confidence_intervals(std::move(report), level);
}

}  // namespace ulindley
