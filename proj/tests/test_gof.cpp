#include "ks_oracle.hpp"
#include "ulindley/errors.hpp"
#include "ulindley/gof.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace ulindley;

namespace {

ModelCdf continuous_unit_lindley(double theta) {
    const UnitLindleyParams params(theta);
    return {[params](double x) { return unit_lindley::cdf(params, x); }, 0.0, 0.0};
}

}  // namespace

TEST(EmpiricalCdf, CountsValuesAtOrBelow) {
    const ProportionSample sample({0.0, 0.5, 1.0});
    EXPECT_DOUBLE_EQ(empirical_cdf(sample, 0.5), 2.0 / 3.0);
    EXPECT_EQ(empirical_cdf(sample, -0.1), 0.0);
    EXPECT_DOUBLE_EQ(empirical_cdf(sample, 0.0), 1.0 / 3.0);
    EXPECT_EQ(empirical_cdf(sample, 1.0), 1.0);
    EXPECT_EQ(empirical_cdf(ProportionSample({0.5, 0.5}), 0.5), 1.0);
    EXPECT_EQ(empirical_cdf(ProportionSample({0.5, 0.5}), 0.49), 0.0);
}

TEST(KsStatistic, QuantileSampleGivesHalfAStep) {
    const double theta = 1.3;
    const UnitLindleyParams params(theta);
    std::vector<double> values;
    for (int i = 1; i <= 10; ++i) values.push_back(unit_lindley::quantile(params, (i - 0.5) / 10.0));
    const KsResult ks = ks_statistic(ProportionSample(values), continuous_unit_lindley(theta));
    EXPECT_NEAR(ks.statistic, 0.05, 1e-12);
}

TEST(KsStatistic, SingleObservation) {
    const ModelCdf model = continuous_unit_lindley(1.0);
    const KsResult ks = ks_statistic(ProportionSample({0.5}), model);
    EXPECT_NEAR(ks.statistic, std::max(model(0.5), 1.0 - model(0.5)), 1e-15);
    EXPECT_EQ(ks.at, 0.5);
}

TEST(KsStatistic, AtomMatching) {
    const double eps = 1e-6;
    const ModelCdf model = model_cdf(InflatedParams(1.0 - eps, 2.0, InflationPoint::Zero));
    const KsResult ks = ks_statistic(ProportionSample({0.0, 0.0, 0.0}), model);
    EXPECT_NEAR(ks.statistic, eps, 1e-12);
}

TEST(KsStatistic, ExcessOnesAreSeenFromTheLeftOfOne) {
    // Three of four values are ones but the model has no atom at 1: the
    // supremum is F(1-) - F_n(1-) = 1 - 1/4.
    const ModelCdf model = model_cdf(InflatedParams(0.1, 1.0, InflationPoint::Zero));
    const KsResult ks = ks_statistic(ProportionSample({0.5, 1.0, 1.0, 1.0}), model);
    EXPECT_NEAR(ks.statistic, 0.75, 1e-15);
    EXPECT_EQ(ks.at, 1.0);
    EXPECT_EQ(ks.side, KsSide::LeftLimit);
}

TEST(KsStatistic, EqualsBruteForceOnRandomMixedCases) {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    std::uniform_real_distribution<double> shape(0.2, 6.0);
    std::uniform_real_distribution<double> beta_shape(1.0, 6.0);
    const auto random_beta = [&](std::optional<double> p) {
        const double a = beta_shape(gen);
        const double b = beta_shape(gen);
        return model_cdf(InflatedBetaParams(unit(gen), a / (a + b), a + b, p));
    };
    for (int c = 0; c < 50; ++c) {
        Rng rng(c);
        const std::size_t n = 5 + c * 3;
        std::vector<double> values;
        switch (c % 3) {
            case 0: values = sample_inflated(InflatedParams(unit(gen), shape(gen), InflationPoint::Zero), n, rng); break;
            case 1: values = sample_zoi(ZeroOneInflatedParams(unit(gen), unit(gen), shape(gen)), n, rng); break;
            default: values = sample_inflated(InflatedParams(unit(gen), shape(gen), InflationPoint::One), n, rng);
        }
        const ProportionSample sample(values);
        ModelCdf model;
        switch (c % 5) {
            case 0: model = model_cdf(InflatedParams(unit(gen), shape(gen), InflationPoint::Zero)); break;
            case 1: model = model_cdf(ZeroOneInflatedParams(unit(gen), unit(gen), shape(gen))); break;
            case 2: model = random_beta(std::nullopt); break;
            case 3: model = random_beta(unit(gen)); break;
            default: model = model_cdf(InflatedParams(unit(gen), shape(gen), InflationPoint::One));
        }
        const double exact = ks_statistic(sample, model).statistic;
        EXPECT_NEAR(exact, oracle::brute_force_ks(sample, model, 20000), 1e-12) << "case " << c;
    }
}

TEST(KsStatistic, InvariantToOrderAndDuplication) {
    Rng rng(8);
    std::vector<double> values = sample_zoi(ZeroOneInflatedParams(0.3, 0.5, 0.56), 200, rng);
    const ModelCdf model = model_cdf(ZeroOneInflatedParams(0.25, 0.4, 0.7));
    const double d = ks_statistic(ProportionSample(values), model).statistic;

    std::vector<double> shuffled = values;
    std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(1));
    EXPECT_EQ(ks_statistic(ProportionSample(shuffled), model).statistic, d);

    std::vector<double> doubled = values;
    doubled.insert(doubled.end(), values.begin(), values.end());
    EXPECT_NEAR(ks_statistic(ProportionSample(doubled), model).statistic, d, 1e-15);
}

TEST(KsStatistic, ShrinksWhenDataComeFromTheModel) {
    const ZeroOneInflatedParams params(0.3, 0.5, 0.56);
    const ModelCdf model = model_cdf(params);
    int small = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        small += ks_statistic(ProportionSample(sample_zoi(params, 10000, rng)), model).statistic < 0.02;
    }
    EXPECT_GE(small, 99);
}

TEST(KsStatistic, RejectsNonMonotoneModels) {
    const ModelCdf broken{[](double x) { return x < 0.5 ? 0.9 : 0.1; }, 0.0, 0.0};
    EXPECT_THROW(ks_statistic(ProportionSample({0.2, 0.7}), broken), DomainError);
    const ModelCdf overflow{[](double x) { return 2.0 * x; }, 0.0, 0.0};
    EXPECT_THROW(ks_statistic(ProportionSample({0.2, 0.7}), overflow), DomainError);
}

TEST(FittedModelCdf, FollowsTheReportedEstimates) {
    const ProportionSample sample({0.0, 0.0, 0.3, 0.5, 0.8, 0.1});
    const FitReport fit = fit_unit_lindley(sample, ModelKind::ULZI, Method::MLE);
    const ModelCdf from_report = fitted_model_cdf(fit);
    const InflatedParams params(fit.estimate("alpha"), fit.estimate("theta"), InflationPoint::Zero);
    EXPECT_EQ(from_report(0.4), inflated_cdf(params, 0.4));
    EXPECT_EQ(from_report.atom_at_zero, params.alpha());
}
