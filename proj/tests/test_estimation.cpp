#include "ulindley/errors.hpp"
#include "ulindley/estimation.hpp"
#include "ulindley/special_math.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace ulindley;

namespace {

EstimationError::Reason reason_of(const std::function<void()>& action) {
    try {
        action();
    } catch (const EstimationError& e) {
        return e.reason();
    }
    ADD_FAILURE() << "no EstimationError thrown";
    return EstimationError::Reason::ModelMismatch;
}

ProportionSample draw_ulzi(double alpha, double theta, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return ProportionSample(sample_inflated(InflatedParams(alpha, theta, InflationPoint::Zero), n, rng));
}

}  // namespace

TEST(ThetaMle, KnownRoot) {
    EXPECT_NEAR(theta_mle(80.0, 40.0), 2.5615528128088303, 1e-15);
}

TEST(ThetaMle, SolvesTheScoreEquationAndMatchesARootFinder) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> log_m(0.0, std::log(1e5));
    std::uniform_real_distribution<double> log_ratio(std::log(1e-4), std::log(1e4));
    for (int i = 0; i < 1000; ++i) {
        const double m = std::round(std::exp(log_m(gen)));
        const double odds = m * std::exp(log_ratio(gen));
        const double theta = theta_mle(m, odds);
        EXPECT_LE(std::abs(theta_score(m, odds, theta)), 1e-8 * m);
        const double root = solve_bracketed(
            {[&](double t) { return theta_score(m, odds, t); }, theta * 0.5, theta * 2.0, 1e-15 * theta});
        EXPECT_LE(std::abs(theta - root), 1e-8 * root);
    }
}

TEST(ThetaMle, RejectsEmptyInterior) {
    EXPECT_THROW(theta_mle(0.0, 1.0), EstimationError);
    EXPECT_THROW(theta_mle(3.0, 0.0), EstimationError);
}

TEST(MleInflated, AlphaIsTheZeroFraction) {
    const ProportionSample sample({0.0, 0.0, 0.3, 0.5, 0.7});
    const FitReport fit = mle_inflated(sample, InflationPoint::Zero);
    EXPECT_EQ(fit.estimate("alpha"), 0.4);
    EXPECT_NEAR(fit.estimate("theta"), theta_mle(3.0, sample.odds_sum()), 1e-15);
    EXPECT_EQ(fit.model, ModelKind::ULZI);
    EXPECT_FALSE(fit.has("p"));
}

TEST(MleInflated, OneInflatedMirrorsZeroInflated) {
    const FitReport fit = mle_inflated(ProportionSample({1.0, 0.2, 0.4, 1.0}), InflationPoint::One);
    EXPECT_EQ(fit.estimate("alpha"), 0.5);
    EXPECT_EQ(fit.model, ModelKind::ULOI);
}

TEST(MleInflated, BoundarySamplesAreNamedErrors) {
    using R = EstimationError::Reason;
    EXPECT_EQ(reason_of([] { mle_inflated(ProportionSample({0.0, 0.0}), InflationPoint::Zero); }),
              R::AllAtInflationPoint);
    EXPECT_EQ(reason_of([] { mle_inflated(ProportionSample({0.2, 0.4}), InflationPoint::Zero); }),
              R::NoneAtInflationPoint);
    EXPECT_EQ(reason_of([] { mle_inflated(ProportionSample({0.0, 0.4, 1.0}), InflationPoint::Zero); }),
              R::OppositeEndpoint);
    try {
        mle_inflated(ProportionSample({0.0, 0.4, 1.0}), InflationPoint::Zero);
    } catch (const EstimationError& e) {
        EXPECT_NE(std::string(e.what()).find("fit ULZOI"), std::string::npos);
    }
}

TEST(MleZoi, ClosedFormsForAlphaAndP) {
    const ProportionSample sample({0.0, 1.0, 1.0, 0.0, 0.0, 0.2, 0.4, 0.6});
    const FitReport fit = mle_zoi(sample);
    EXPECT_EQ(fit.estimate("alpha"), 5.0 / 8.0);
    EXPECT_EQ(fit.estimate("p"), 2.0 / 5.0);
    EXPECT_EQ(fit.parameters.size(), 3u);
}

TEST(MleZoi, BoundarySamplesAreNamedErrors) {
    using R = EstimationError::Reason;
    EXPECT_EQ(reason_of([] { mle_zoi(ProportionSample({0.0, 0.3})); }), R::NoOnes);
    EXPECT_EQ(reason_of([] { mle_zoi(ProportionSample({1.0, 0.3})); }), R::NoZeros);
    EXPECT_EQ(reason_of([] { mle_zoi(ProportionSample({1.0, 0.0})); }), R::AllAtInflationPoint);
}

TEST(FisherInformation, ClosedForms) {
    const Eigen::Matrix2d k = fisher_inflated(InflatedParams(0.2, 7.0, InflationPoint::Zero), 1);
    EXPECT_NEAR(k(1, 1), 0.020153061224489798, 1e-17);
    EXPECT_NEAR(k(0, 0), 1.0 / (0.2 * 0.8), 1e-14);
    EXPECT_EQ(k(0, 1), 0.0);
    const Eigen::Matrix3d z = fisher_zoi(ZeroOneInflatedParams(0.3, 0.5, 0.56), 100);
    EXPECT_NEAR(z(1, 1), 100.0 * 0.3 / 0.25, 1e-12);
    EXPECT_EQ(z(0, 2), 0.0);
    EXPECT_EQ(z(1, 2), 0.0);
}

TEST(FisherInformation, StandardErrorsComeFromItsInverse) {
    const ProportionSample sample = draw_ulzi(0.3, 1.5, 400, 21);
    const FitReport fit = mle_inflated(sample, InflationPoint::Zero);
    const InflatedParams at(fit.estimate("alpha"), fit.estimate("theta"), InflationPoint::Zero);
    const Eigen::Matrix2d k = fisher_inflated(at, 400);
    EXPECT_NEAR(*fit.at("theta").std_error, std::sqrt(1.0 / k(1, 1)), 1e-14);
    EXPECT_NEAR(*fit.at("alpha").std_error, std::sqrt(at.alpha() * (1.0 - at.alpha()) / 400.0), 1e-14);
}

TEST(CoxSnell, BiasIsPositiveAndShrinksWithM) {
    for (const double theta : {0.1, 1.0, 7.0, 50.0}) {
        EXPECT_GT(cox_snell_bias(theta, 10.0), 0.0);
        EXPECT_NEAR(cox_snell_bias(theta, 100.0) * 10.0, cox_snell_bias(theta, 10.0), 1e-12 * theta);
    }
}

TEST(CoxSnell, CorrectedValueIsBelowTheMle) {
    const ProportionSample sample = draw_ulzi(0.2, 7.0, 40, 8);
    const BiasCorrectedTheta bc = bcmle_theta(sample);
    EXPECT_FALSE(bc.fell_back_to_mle);
    EXPECT_LT(bc.value, bc.mle);
    EXPECT_NEAR(bc.mle - bc.value, cox_snell_bias(bc.mle, static_cast<double>(sample.interior())), 1e-14);
}

TEST(CoxSnell, CorrectionStaysPositiveEvenWithOneInteriorValue) {
    for (double theta = 1e-3; theta < 1e4; theta *= 1.5) {
        EXPECT_GT(theta - cox_snell_bias(theta, 1.0), 0.0) << "theta = " << theta;
    }
    const BiasCorrectedTheta bc = bcmle_theta(ProportionSample({0.0, 0.5}));
    EXPECT_FALSE(bc.fell_back_to_mle);
    EXPECT_GT(bc.value, 0.0);
}

TEST(ConditionalMean, InvertsTheInteriorMean) {
    EXPECT_NEAR(cme_theta(ProportionSample({0.0, 0.2, 0.3})), 1.0 / 0.25 - 1.0, 1e-15);
    EXPECT_THROW(cme_theta(ProportionSample({0.0, 1.0})), EstimationError);
}

TEST(FitUnitLindley, MethodsReplaceOnlyTheta) {
    const ProportionSample sample = draw_ulzi(0.2, 1.0, 300, 4);
    const FitReport mle = fit_unit_lindley(sample, ModelKind::ULZI, Method::MLE);
    const FitReport bc = fit_unit_lindley(sample, ModelKind::ULZI, Method::BCMLE);
    const FitReport cme = fit_unit_lindley(sample, ModelKind::ULZI, Method::CME);
    EXPECT_EQ(mle.estimate("alpha"), bc.estimate("alpha"));
    EXPECT_EQ(mle.estimate("alpha"), cme.estimate("alpha"));
    EXPECT_EQ(bc.estimate("theta"), bcmle_theta(sample).value);
    EXPECT_EQ(cme.estimate("theta"), cme_theta(sample));
    EXPECT_FALSE(cme.at("theta").std_error.has_value());
    EXPECT_FALSE(cme.at("theta").ci.has_value());
    EXPECT_TRUE(cme.at("alpha").ci.has_value());
    EXPECT_EQ(to_string(cme.method), "CME");
    EXPECT_THROW(fit_unit_lindley(sample, ModelKind::ZIB, Method::MLE), DomainError);
}

TEST(ConfidenceIntervals, WaldFormAndParameterSpaceFlag) {
    const FitReport fit = fit_unit_lindley(draw_ulzi(0.3, 2.0, 200, 2), ModelKind::ULZI, Method::MLE, 0.9);
    for (const auto& param : fit.parameters) {
        ASSERT_TRUE(param.ci.has_value());
        const double half = wald_z(0.9) * *param.std_error;
        EXPECT_NEAR(param.ci->lo, param.estimate - half, 1e-14);
        EXPECT_NEAR(param.ci->hi, param.estimate + half, 1e-14);
        EXPECT_EQ(param.ci->level, 0.9);
        EXPECT_FALSE(param.ci->exits_parameter_space);
    }
    // Two of three observations at zero: the alpha interval crosses 1.
    const FitReport tiny = fit_unit_lindley(ProportionSample({0.0, 0.0, 0.5}), ModelKind::ULZI, Method::MLE);
    EXPECT_TRUE(tiny.at("alpha").ci->exits_parameter_space);
    EXPECT_GT(tiny.at("alpha").ci->hi, 1.0);
}

TEST(FitUnitLindley, RecoversParametersOnLargeSamples) {
    const ProportionSample sample = draw_ulzi(0.2438, 0.7617, 20000, 77);
    const FitReport fit = fit_unit_lindley(sample, ModelKind::ULZI, Method::MLE);
    EXPECT_NEAR(fit.estimate("alpha"), 0.2438, 4.0 * *fit.at("alpha").std_error);
    EXPECT_NEAR(fit.estimate("theta"), 0.7617, 4.0 * *fit.at("theta").std_error);
}
