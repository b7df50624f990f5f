#include "ulindley/beta_competitor.hpp"

#include "ulindley/errors.hpp"
#include "ulindley/special_math.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <string>

namespace ulindley {

namespace {

constexpr int kNewtonSteps = 100;
constexpr int kGoldenSweeps = 200;
constexpr double kGradientTolerance = 1e-8;
// Beyond this precision the interior likelihood is flat to double
// precision: the data show (almost) no spread and there is no finite
// maximizer.
constexpr double kMaxPrecision = 1e8;

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

struct Point {
    double mu;
    double phi;
};

bool feasible(const Point& x) { return x.mu > 0.0 && x.mu < 1.0 && x.phi > 0.0 && std::isfinite(x.phi); }

double golden_section_max(const std::function<double(double)>& f, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < 80 && (b - a) > 1e-12 * (1.0 + std::abs(a)); ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

struct NewtonOutcome {
    Point at;
    bool converged;
    int steps;
};

NewtonOutcome newton_ascent(const ProportionSample& sample, Point x) {
    double current = beta_interior_log_likelihood(sample, x.mu, x.phi);
    for (int step = 0; step < kNewtonSteps; ++step) {
        const BetaDerivatives d = beta_interior_derivatives(sample, x.mu, x.phi);
        if (d.gradient.norm() < kGradientTolerance) return {x, true, step};

        const Eigen::Matrix2d& h = d.hessian;
        const bool negative_definite = h(0, 0) < 0.0 && h.determinant() > 0.0;
        Eigen::Vector2d direction;
        if (negative_definite) {
            direction = -h.ldlt().solve(d.gradient);
        } else {
            // Scaled steepest ascent when the Hessian is indefinite.
            direction = d.gradient / (std::abs(h(0, 0)) + std::abs(h(1, 1)) + 1.0);
        }

        // Accept rounding-level decreases so the final Newton steps near the
        // optimum are not rejected.
        const double slack = 1e-12 * (1.0 + std::abs(current));
        bool moved = false;
        double t = 1.0;
        for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
            const Point candidate{x.mu + t * direction(0), x.phi + t * direction(1)};
            if (!feasible(candidate)) continue;
            const double value = beta_interior_log_likelihood(sample, candidate.mu, candidate.phi);
            if (std::isfinite(value) && value >= current - slack) {
                x = candidate;
                current = value;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    const BetaDerivatives d = beta_interior_derivatives(sample, x.mu, x.phi);
    return {x, d.gradient.norm() < kGradientTolerance, kNewtonSteps};
}

Point golden_coordinate_search(const ProportionSample& sample, Point x) {
    for (int sweep = 0; sweep < kGoldenSweeps; ++sweep) {
        x.mu = golden_section_max(
            [&](double mu) { return beta_interior_log_likelihood(sample, mu, x.phi); }, 1e-9,
            1.0 - 1e-9);
        const double log_phi = golden_section_max(
            [&](double lp) { return beta_interior_log_likelihood(sample, x.mu, std::exp(lp)); },
            std::log(1e-6), std::log(1e7));
        x.phi = std::exp(log_phi);
    }
    return x;
}

Point method_of_moments(const ProportionSample& sample) {
    const auto m = static_cast<double>(sample.interior());
    const double mean = sample.interior_sum() / m;
    const double variance = sample.interior_square_sum() / m - mean * mean;
    double phi = variance > 0.0 ? mean * (1.0 - mean) / variance - 1.0 : 1.0;
    if (!(phi > 0.0) || !std::isfinite(phi)) phi = 1.0;
    return {mean, phi};
}

void check_preconditions(const ProportionSample& sample, ModelKind kind) {
    if (kind == ModelKind::ZIB) {
        if (sample.ones() > 0) {
            throw EstimationError(EstimationError::Reason::OppositeEndpoint,
                                  "sample contains ones, which ZIB gives probability zero; fit ZOIB");
        }
        if (sample.zeros() == 0) {
            throw EstimationError(EstimationError::Reason::NoneAtInflationPoint,
                                  "sample has no zeros: alpha-hat would be 0, on the boundary of (0,1)");
        }
    } else {
        if (sample.zeros() == 0) {
            throw EstimationError(EstimationError::Reason::NoZeros,
                                  "sample has no zeros: p-hat would be 1, on the boundary");
        }
        if (sample.ones() == 0) {
            throw EstimationError(EstimationError::Reason::NoOnes,
                                  "sample has no ones: p-hat would be 0, on the boundary; fit ZIB instead");
        }
    }
    if (sample.interior() == 0) {
        throw EstimationError(EstimationError::Reason::AllAtInflationPoint,
                              "no interior observations: alpha-hat would be 1, on the boundary of (0,1)");
    }
    if (sample.interior() < 2) {
        throw EstimationError(EstimationError::Reason::TooFewInterior,
                              "the beta component needs at least two interior observations");
    }
}

}  // namespace

InflatedBetaParams::InflatedBetaParams(double alpha, double mu, double phi, std::optional<double> p)
    : alpha_(alpha), mu_(mu), phi_(phi), p_(p) {
    if (!in_open_unit(alpha)) throw DomainError("inflated beta: alpha must lie in (0,1)");
    if (!in_open_unit(mu)) throw DomainError("inflated beta: mu must lie in (0,1)");
    if (!(phi > 0.0) || !std::isfinite(phi)) throw DomainError("inflated beta: phi must be positive");
    if (p && !in_open_unit(*p)) throw DomainError("inflated beta: p must lie in (0,1)");
}

double beta_log_pdf(double a, double b, double y) {
    return boost::math::lgamma(a + b) - boost::math::lgamma(a) - boost::math::lgamma(b) +
           (a - 1.0) * std::log(y) + (b - 1.0) * std::log1p(-y);
}

double beta_inflated_density(const InflatedBetaParams& params, double y) {
    if (!(y >= 0.0 && y <= 1.0)) throw DomainError("beta_inflated_density: y must lie in [0,1]");
    if (y == 0.0) return params.mass_at_zero();
    if (y == 1.0) return params.mass_at_one();
    return (1.0 - params.alpha()) * std::exp(beta_log_pdf(params.shape_a(), params.shape_b(), y));
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("regularized_incomplete_beta: shapes must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return boost::math::ibeta(a, b, x);
}

double beta_inflated_cdf(const InflatedBetaParams& params, double y) {
    if (y < 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    return params.mass_at_zero() +
           (1.0 - params.alpha()) * regularized_incomplete_beta(params.shape_a(), params.shape_b(), y);
}

double beta_interior_log_likelihood(const ProportionSample& sample, double mu, double phi) {
    const double a = mu * phi;
    const double b = (1.0 - mu) * phi;
    const auto m = static_cast<double>(sample.interior());
    return m * (boost::math::lgamma(phi) - boost::math::lgamma(a) - boost::math::lgamma(b)) +
           (a - 1.0) * sample.log_sum() + (b - 1.0) * sample.log_complement_sum();
}

BetaDerivatives beta_interior_derivatives(const ProportionSample& sample, double mu, double phi) {
    const double a = mu * phi;
    const double b = (1.0 - mu) * phi;
    const auto m = static_cast<double>(sample.interior());
    const double psi_a = digamma(a);
    const double psi_b = digamma(b);
    const double tri_a = trigamma(a);
    const double tri_b = trigamma(b);
    const double logit_sum = sample.log_sum() - sample.log_complement_sum();

    const double mu_core = m * (psi_b - psi_a) + logit_sum;
    BetaDerivatives d;
    d.gradient(0) = phi * mu_core;
    d.gradient(1) = m * (digamma(phi) - mu * psi_a - (1.0 - mu) * psi_b) + mu * sample.log_sum() +
                    (1.0 - mu) * sample.log_complement_sum();
    d.hessian(0, 0) = -phi * phi * m * (tri_a + tri_b);
    d.hessian(0, 1) = mu_core + phi * m * ((1.0 - mu) * tri_b - mu * tri_a);
    d.hessian(1, 0) = d.hessian(0, 1);
    d.hessian(1, 1) = m * (trigamma(phi) - mu * mu * tri_a - (1.0 - mu) * (1.0 - mu) * tri_b);
    return d;
}

FitReport fit_beta_inflated(const ProportionSample& sample, ModelKind kind, double level) {
    if (kind != ModelKind::ZIB && kind != ModelKind::ZOIB) {
        throw DomainError("fit_beta_inflated: kind must be ZIB or ZOIB");
    }
    check_preconditions(sample, kind);

    NewtonOutcome outcome = newton_ascent(sample, method_of_moments(sample));
    if (!outcome.converged) {
        outcome = newton_ascent(sample, golden_coordinate_search(sample, outcome.at));
    }
    if (!outcome.converged) {
        throw ConvergenceError("beta fit: Newton did not reach a stationary point (last mu = " +
                                   std::to_string(outcome.at.mu) +
                                   ", phi = " + std::to_string(outcome.at.phi) + ")",
                               outcome.steps, outcome.at.mu);
    }
    const Point opt = outcome.at;
    if (opt.phi > kMaxPrecision) {
        throw ConvergenceError("beta fit: precision phi diverges (interior values have almost no spread)",
                               outcome.steps, opt.phi);
    }

    const auto n = static_cast<double>(sample.n());
    const auto n0 = static_cast<double>(sample.zeros());
    const auto n1 = static_cast<double>(sample.ones());
    const auto m = static_cast<double>(sample.interior());
    const bool zoi = kind == ModelKind::ZOIB;
    const double alpha = (n0 + n1) / n;
    const std::optional<double> p = zoi ? std::optional<double>(n1 / (n0 + n1)) : std::nullopt;
    const InflatedBetaParams params(alpha, opt.mu, opt.phi, p);

    FitReport report;
    report.model = kind;
    report.method = Method::MLE;
    report.n = sample.n();
    report.parameters.push_back({"alpha", alpha, std::nullopt, std::nullopt});
    if (p) report.parameters.push_back({"p", *p, std::nullopt, std::nullopt});
    report.parameters.push_back({"mu", opt.mu, std::nullopt, std::nullopt});
    report.parameters.push_back({"phi", opt.phi, std::nullopt, std::nullopt});

    double log_lik = (n0 + n1) * std::log(alpha) + m * std::log1p(-alpha) +
                     beta_interior_log_likelihood(sample, opt.mu, opt.phi);
    if (p) log_lik += n1 * std::log(*p) + n0 * std::log1p(-*p);
    report.log_lik = log_lik;

    const Eigen::Index dim = zoi ? 4 : 3;
    const Eigen::Index beta_at = zoi ? 2 : 1;
    report.fisher = Eigen::MatrixXd::Zero(dim, dim);
    report.fisher(0, 0) = n / (alpha * (1.0 - alpha));
    if (p) report.fisher(1, 1) = n * alpha / (*p * (1.0 - *p));
    const Eigen::Matrix2d observed = -beta_interior_derivatives(sample, opt.mu, opt.phi).hessian;
    report.fisher.block(beta_at, beta_at, 2, 2) = observed;

    const bool positive_definite = observed(0, 0) > 0.0 && observed.determinant() > 0.0;
    if (positive_definite) {
        const Eigen::MatrixXd inverse = report.fisher.inverse();
        for (Eigen::Index i = 0; i < dim; ++i) {
            report.parameters[static_cast<std::size_t>(i)].std_error = std::sqrt(inverse(i, i));
        }
    } else {
        report.warnings.emplace_back("observed information of (mu, phi) is not positive definite");
        report.parameters[0].std_error = std::sqrt(alpha * (1.0 - alpha) / n);
        if (p) report.parameters[1].std_error = std::sqrt(*p * (1.0 - *p) / (n * alpha));
    }
    return confidence_intervals(std::move(report), level);
}

}  // namespace ulindley
