#include "ulindley/inflated.hpp"

#include "ulindley/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ulindley {

namespace {

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

void require_unit_closed(double y, const char* what) {
    if (!(y >= 0.0 && y <= 1.0)) {
        throw DomainError(std::string(what) + ": y must lie in [0,1]");
    }
}

// log(theta^2 / (1+theta))
double log_norming(double theta) { return 2.0 * std::log(theta) - std::log1p(theta); }

double logit(double v) { return std::log(v) - std::log1p(-v); }

// Shared interior part of the variance formula. `atom_mean` is E[Y 1{atom}]
// (alpha c or alpha p); second moment of the atoms equals the same value.
MeanVariance mixed_moments(double alpha, double atom_mean, const UnitLindleyParams& base) {
    const double mu1 = unit_lindley::raw_moment(base, 1);
    const double mu2 = unit_lindley::raw_moment(base, 2);
    const double interior_weight = (1.0 - alpha) * mu1;
    // alpha c (1 - alpha c) + (1-alpha)/(1+theta) [ (1+theta) mu2' - 2 alpha c - (1-alpha)/(1+theta) ]
    const double variance = atom_mean * (1.0 - atom_mean) +
                            (1.0 - alpha) * mu2 - 2.0 * atom_mean * interior_weight -
                            interior_weight * interior_weight;
    return {atom_mean + interior_weight, variance};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ExponentialFamilyCheck identity_check(const ExponentialFamilyForm& mine,
                                      const ExponentialFamilyForm& theirs, double log_f_mine,
                                      double log_f_theirs) {
    std::vector<double> delta(mine.eta.size());
    for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = mine.eta[i] - theirs.eta[i];
    const double predicted = dot(delta, mine.stats) - (mine.log_partition - theirs.log_partition);
    return {mine.eta, mine.stats, (log_f_mine - log_f_theirs) - predicted};
}

}  // namespace

InflatedParams::InflatedParams(double alpha, double theta, InflationPoint point)
    : alpha_(alpha), base_(theta), point_(point) {
    if (!in_open_unit(alpha)) throw DomainError("inflated unit Lindley: alpha must lie in (0,1)");
}

ZeroOneInflatedParams::ZeroOneInflatedParams(double alpha, double p, double theta)
    : alpha_(alpha), p_(p), base_(theta) {
    if (!in_open_unit(alpha)) {
        throw DomainError("zero-and-one inflated unit Lindley: alpha must lie in (0,1)");
    }
    if (!in_open_unit(p)) throw DomainError("zero-and-one inflated unit Lindley: p must lie in (0,1)");
}

double inflated_density(const InflatedParams& params, double y) {
    require_unit_closed(y, "inflated_density");
    if (y == point_value(params.point())) return params.alpha();
    if (!in_open_unit(y)) return 0.0;
    return (1.0 - params.alpha()) * unit_lindley::pdf(params.base(), y);
}

double zoi_density(const ZeroOneInflatedParams& params, double y) {
    require_unit_closed(y, "zoi_density");
    if (y == 0.0) return params.mass_at_zero();
    if (y == 1.0) return params.mass_at_one();
    return (1.0 - params.alpha()) * unit_lindley::pdf(params.base(), y);
}

double inflated_cdf(const InflatedParams& params, double y) {
    const double jump = y >= point_value(params.point()) ? params.alpha() : 0.0;
    return jump + (1.0 - params.alpha()) * unit_lindley::cdf(params.base(), y);
}

double zoi_cdf(const ZeroOneInflatedParams& params, double y) {
    double bernoulli = 0.0;
    if (y >= 1.0) {
        bernoulli = 1.0;
    } else if (y >= 0.0) {
        bernoulli = 1.0 - params.p();
    }
    return params.alpha() * bernoulli + (1.0 - params.alpha()) * unit_lindley::cdf(params.base(), y);
}

MeanVariance inflated_mean_var(const InflatedParams& params) {
    return mixed_moments(params.alpha(), params.alpha() * point_value(params.point()), params.base());
}

MeanVariance zoi_mean_var(const ZeroOneInflatedParams& params) {
    return mixed_moments(params.alpha(), params.mass_at_one(), params.base());
}

double log_density(const InflatedParams& params, double y) {
    require_unit_closed(y, "log_density");
    if (y == point_value(params.point())) return std::log(params.alpha());
    if (!in_open_unit(y)) return -std::numeric_limits<double>::infinity();
    return std::log1p(-params.alpha()) + unit_lindley::log_pdf(params.base(), y);
}

double log_density(const ZeroOneInflatedParams& params, double y) {
    require_unit_closed(y, "log_density");
    if (y == 0.0) return std::log(params.alpha()) + std::log1p(-params.p());
    if (y == 1.0) return std::log(params.alpha()) + std::log(params.p());
    return std::log1p(-params.alpha()) + unit_lindley::log_pdf(params.base(), y);
}

double log_likelihood(const InflatedParams& params, const ProportionSample& sample) {
    const bool zero_point = params.point() == InflationPoint::Zero;
    const std::size_t at_point = zero_point ? sample.zeros() : sample.ones();
    const std::size_t opposite = zero_point ? sample.ones() : sample.zeros();
    if (opposite > 0) {
        throw ModelMismatchError(zero_point
                                     ? "sample contains ones, which ULZI gives probability zero; fit ULZOI"
                                     : "sample contains zeros, which ULOI gives probability zero; fit ULZOI");
    }
    const double alpha = params.alpha();
    const double theta = params.theta();
    const auto m = static_cast<double>(sample.interior());
    const double l1 = static_cast<double>(at_point) * std::log(alpha) + m * std::log1p(-alpha);
    const double l2 = m * log_norming(theta) - 3.0 * sample.log_complement_sum() -
                      theta * sample.odds_sum();
    return l1 + l2;
}

double log_likelihood(const ZeroOneInflatedParams& params, const ProportionSample& sample) {
    const double alpha = params.alpha();
    const double p = params.p();
    const double theta = params.theta();
    const auto n0 = static_cast<double>(sample.zeros());
    const auto n1 = static_cast<double>(sample.ones());
    const auto m = static_cast<double>(sample.interior());
    const double l1 = (n0 + n1) * std::log(alpha) + m * std::log1p(-alpha);
    const double l2 = n1 * std::log(p) + n0 * std::log1p(-p);
    const double l3 = m * log_norming(theta) - 3.0 * sample.log_complement_sum() -
                      theta * sample.odds_sum();
    return l1 + l2 + l3;
}

std::vector<double> sample_inflated(const InflatedParams& params, std::size_t n, Rng& rng) {
    std::vector<double> out;
    out.reserve(n);
    const double c = point_value(params.point());
    for (std::size_t i = 0; i < n; ++i) {
        const double u = uniform_open01(rng);
        out.push_back(u < params.alpha() ? c : unit_lindley::sample(params.base(), rng));
    }
    return out;
}

std::vector<double> sample_zoi(const ZeroOneInflatedParams& params, std::size_t n, Rng& rng) {
    std::vector<double> out;
    out.reserve(n);
    const double zero_cut = params.mass_at_zero();
    for (std::size_t i = 0; i < n; ++i) {
        const double u = uniform_open01(rng);
        if (u <= zero_cut) {
            out.push_back(0.0);
        } else if (u <= params.alpha()) {
            out.push_back(1.0);
        } else {
            out.push_back(unit_lindley::sample(params.base(), rng));
        }
    }
    return out;
}

ExponentialFamilyForm exponential_family_form(const InflatedParams& params, double y) {
    require_unit_closed(y, "exponential_family_form");
    const double alpha = params.alpha();
    const double theta = params.theta();
    const bool at_point = y == point_value(params.point());
    if (!at_point && !in_open_unit(y)) {
        throw DomainError("exponential_family_form: y is outside the model support");
    }
    ExponentialFamilyForm form;
    form.eta = {logit(alpha) - log_norming(theta), -theta};
    form.stats = {at_point ? 1.0 : 0.0, at_point ? 0.0 : y / (1.0 - y)};
    form.log_partition = -std::log1p(-alpha) - log_norming(theta);
    form.log_carrier = at_point ? 0.0 : -3.0 * std::log1p(-y);
    return form;
}

ExponentialFamilyForm exponential_family_form(const ZeroOneInflatedParams& params, double y) {
    require_unit_closed(y, "exponential_family_form");
    const double alpha = params.alpha();
    const double p = params.p();
    const double theta = params.theta();
    const bool atom = !in_open_unit(y);
    ExponentialFamilyForm form;
    form.eta = {logit(alpha) + std::log1p(-p) - log_norming(theta), logit(p), -theta};
    form.stats = {atom ? 1.0 : 0.0, atom ? y : 0.0, atom ? 0.0 : y / (1.0 - y)};
    form.log_partition = -std::log1p(-alpha) - log_norming(theta);
    form.log_carrier = atom ? 0.0 : -3.0 * std::log1p(-y);
    return form;
}

ExponentialFamilyCheck natural_params_and_suffstats(const InflatedParams& params, double y,
                                                    const InflatedParams& other) {
    if (params.point() != other.point()) {
        throw DomainError("natural_params_and_suffstats: both parameter sets need the same inflation point");
    }
    return identity_check(exponential_family_form(params, y), exponential_family_form(other, y),
                          log_density(params, y), log_density(other, y));
}

ExponentialFamilyCheck natural_params_and_suffstats(const ZeroOneInflatedParams& params, double y,
                                                    const ZeroOneInflatedParams& other) {
    return identity_check(exponential_family_form(params, y), exponential_family_form(other, y),
                          log_density(params, y), log_density(other, y));
}

}  // namespace ulindley
