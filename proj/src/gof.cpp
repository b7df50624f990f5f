#include "ulindley/gof.hpp"

#include "ulindley/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ulindley {

double empirical_cdf(const ProportionSample& sample, double x) {
    const auto sorted = sample.sorted();
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    return static_cast<double>(count) / static_cast<double>(sample.n());
}

double ModelCdf::left_limit(double x) const {
    if (x == 0.0) return cdf(x) - atom_at_zero;
    if (x == 1.0) return cdf(x) - atom_at_one;
    return cdf(x);
}

ModelCdf model_cdf(const InflatedParams& params) {
    const bool zero = params.point() == InflationPoint::Zero;
    return {[params](double x) { return inflated_cdf(params, x); }, zero ? params.alpha() : 0.0,
            zero ? 0.0 : params.alpha()};
}

ModelCdf model_cdf(const ZeroOneInflatedParams& params) {
    return {[params](double x) { return zoi_cdf(params, x); }, params.mass_at_zero(),
            params.mass_at_one()};
}

ModelCdf model_cdf(const InflatedBetaParams& params) {
    return {[params](double x) { return beta_inflated_cdf(params, x); }, params.mass_at_zero(),
            params.mass_at_one()};
}

ModelCdf fitted_model_cdf(const FitReport& report) {
    switch (report.model) {
        case ModelKind::ULZI:
            return model_cdf(InflatedParams(report.estimate("alpha"), report.estimate("theta"), InflationPoint::Zero));
        case ModelKind::ULOI:
            return model_cdf(InflatedParams(report.estimate("alpha"), report.estimate("theta"), InflationPoint::One));
        case ModelKind::ULZOI:
            return model_cdf(
                ZeroOneInflatedParams(report.estimate("alpha"), report.estimate("p"), report.estimate("theta")));
        case ModelKind::ZIB:
            return model_cdf(InflatedBetaParams(report.estimate("alpha"), report.estimate("mu"), report.estimate("phi")));
        case ModelKind::ZOIB:
            return model_cdf(InflatedBetaParams(report.estimate("alpha"), report.estimate("mu"), report.estimate("phi"),
                                                report.estimate("p")));
    }
    throw DomainError("fitted_model_cdf: unknown model");
}

KsResult ks_statistic(const ProportionSample& sample, const ModelCdf& model) {
    const auto sorted = sample.sorted();
    const auto n = static_cast<double>(sample.n());

    std::vector<double> points;
    points.reserve(sorted.size() + 2);
    points.push_back(0.0);
    points.insert(points.end(), sorted.begin(), sorted.end());
    points.push_back(1.0);
    points.erase(std::unique(points.begin(), points.end()), points.end());

    KsResult best{0.0, 0.0, KsSide::RightValue};
    double previous_model = 0.0;
    std::size_t below = 0;  // sample values strictly below the current point
    for (const double u : points) {
        std::size_t through = below;
        while (through < sorted.size() && sorted[through] <= u) ++through;

        const double model_left = model.left_limit(u);
        const double model_right = model(u);
        const bool ordered = previous_model <= model_left + 1e-15 && model_left <= model_right + 1e-15;
        if (!ordered || model_left < -1e-15 || model_right > 1.0 + 1e-15 || std::isnan(model_right)) {
            throw DomainError("ks_statistic: model cdf is not a nondecreasing function into [0,1]");
        }
        previous_model = model_right;

        const double gap_left = std::abs(static_cast<double>(below) / n - model_left);
        const double gap_right = std::abs(static_cast<double>(through) / n - model_right);
        if (gap_left > best.statistic) best = {gap_left, u, KsSide::LeftLimit};
        if (gap_right > best.statistic) best = {gap_right, u, KsSide::RightValue};
        below = through;
    }
    return best;
}

}  // namespace ulindley
