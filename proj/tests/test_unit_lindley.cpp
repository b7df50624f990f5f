#include "ulindley/errors.hpp"
#include "ulindley/unit_lindley.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include <cmath>

using namespace ulindley;

namespace {

double integrate(const std::function<double(double)>& f, double lo, double hi) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(f, lo, hi, 1e-13);
}

}  // namespace

TEST(UnitLindley, RejectsNonPositiveTheta) {
    EXPECT_THROW(UnitLindleyParams(0.0), DomainError);
    EXPECT_THROW(UnitLindleyParams(-2.0), DomainError);
    EXPECT_THROW(UnitLindleyParams(std::nan("")), DomainError);
}

TEST(UnitLindley, DensityIntegratesToOne) {
    for (const double theta : {0.14, 0.25, 1.0, 4.0, 7.0}) {
        const UnitLindleyParams params(theta);
        EXPECT_NEAR(integrate([&](double x) { return unit_lindley::pdf(params, x); }, 0.0, 1.0), 1.0, 1e-10)
            << "theta = " << theta;
    }
}

TEST(UnitLindley, DensityOutsideOpenIntervalIsADomainError) {
    const UnitLindleyParams params(1.0);
    EXPECT_THROW(unit_lindley::log_pdf(params, 0.0), DomainError);
    EXPECT_THROW(unit_lindley::log_pdf(params, 1.0), DomainError);
    EXPECT_THROW(unit_lindley::pdf(params, 1.5), DomainError);
}

TEST(UnitLindley, CdfMatchesHighPrecisionValues) {
    EXPECT_NEAR(unit_lindley::cdf(UnitLindleyParams(1.0), 0.5), 0.44818083824283652, 1e-15);
    EXPECT_NEAR(unit_lindley::cdf(UnitLindleyParams(0.25), 0.9), 0.70488217122677991, 1e-15);
    EXPECT_NEAR(unit_lindley::cdf(UnitLindleyParams(0.56), 0.5), 0.22374152861571311, 1e-15);
}

TEST(UnitLindley, CdfIsTheIntegralOfTheDensity) {
    for (const double theta : {0.25, 1.0, 7.0}) {
        const UnitLindleyParams params(theta);
        for (const double x : {0.05, 0.3, 0.7, 0.95}) {
            const double area = integrate([&](double t) { return unit_lindley::pdf(params, t); }, 0.0, x);
            EXPECT_NEAR(unit_lindley::cdf(params, x), area, 1e-11);
        }
    }
}

TEST(UnitLindley, CdfClampsOutsideSupport) {
    const UnitLindleyParams params(2.0);
    EXPECT_EQ(unit_lindley::cdf(params, -0.1), 0.0);
    EXPECT_EQ(unit_lindley::cdf(params, 0.0), 0.0);
    EXPECT_EQ(unit_lindley::cdf(params, 1.0), 1.0);
    EXPECT_EQ(unit_lindley::cdf(params, 3.0), 1.0);
}

TEST(UnitLindley, QuantileInvertsCdf) {
    EXPECT_NEAR(unit_lindley::quantile(UnitLindleyParams(1.0), 0.5), 0.53405872761500711, 1e-13);
    for (const double theta : {0.14, 1.0, 7.0}) {
        const UnitLindleyParams params(theta);
        for (const double u : {1e-6, 0.1, 0.5, 0.9, 0.999}) {
            EXPECT_NEAR(unit_lindley::cdf(params, unit_lindley::quantile(params, u)), u, 1e-12);
        }
    }
    EXPECT_THROW(unit_lindley::quantile(UnitLindleyParams(1.0), 0.0), DomainError);
    EXPECT_THROW(unit_lindley::quantile(UnitLindleyParams(1.0), 1.0), DomainError);
}

TEST(UnitLindley, RawMomentsMatchHighPrecisionValues) {
    EXPECT_DOUBLE_EQ(unit_lindley::raw_moment(UnitLindleyParams(1.0), 1), 0.5);
    EXPECT_NEAR(unit_lindley::raw_moment(UnitLindleyParams(1.0), 2), 0.29817368116159704, 1e-14);
    EXPECT_NEAR(unit_lindley::raw_moment(UnitLindleyParams(0.25), 2), 0.66704427224156967, 1e-14);
    EXPECT_NEAR(unit_lindley::raw_moment(UnitLindleyParams(7.0), 2), 0.025676713469375684, 1e-14);
    EXPECT_NEAR(unit_lindley::raw_moment(UnitLindleyParams(1.0), 3), 0.19269472464638815, 1e-12);
    EXPECT_NEAR(unit_lindley::raw_moment(UnitLindleyParams(0.25), 3), 0.56789388478510145, 1e-12);
    EXPECT_NEAR(unit_lindley::raw_moment(UnitLindleyParams(7.0), 3), 0.0067671346937568378, 1e-12);
}

TEST(UnitLindley, RawMomentsMatchDirectQuadrature) {
    for (const double theta : {0.14, 1.0, 4.0}) {
        const UnitLindleyParams params(theta);
        for (int r = 1; r <= 5; ++r) {
            const double direct =
                integrate([&](double x) { return std::pow(x, r) * unit_lindley::pdf(params, x); }, 0.0, 1.0);
            EXPECT_NEAR(unit_lindley::raw_moment(params, r), direct, 1e-10) << theta << " " << r;
        }
    }
}

TEST(UnitLindley, LargeThetaMomentsDoNotOverflow) {
    const double m2 = unit_lindley::raw_moment(UnitLindleyParams(800.0), 2);
    EXPECT_TRUE(std::isfinite(m2));
    EXPECT_GT(m2, 0.0);
    EXPECT_LT(m2, 1.0 / (801.0 * 801.0) * 3.0);
}

TEST(UnitLindley, SamplerReproducesMeanAndStaysInside) {
    for (const double theta : {0.25, 1.0, 7.0}) {
        const UnitLindleyParams params(theta);
        Rng rng(17);
        const int draws = 200000;
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int i = 0; i < draws; ++i) {
            const double y = unit_lindley::sample(params, rng);
            ASSERT_GT(y, 0.0);
            ASSERT_LT(y, 1.0);
            sum += y;
            sum_sq += y * y;
        }
        const double mean = sum / draws;
        const double sd = std::sqrt(sum_sq / draws - mean * mean);
        EXPECT_NEAR(mean, 1.0 / (1.0 + theta), 4.0 * sd / std::sqrt(draws)) << "theta = " << theta;
    }
}

TEST(UnitLindley, SamplerIsDeterministicForAFixedSeed) {
    const UnitLindleyParams params(0.7);
    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(unit_lindley::sample(params, a), unit_lindley::sample(params, b));
}
