#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "swipt/analytic_nc.hpp"

using namespace swipt;

namespace {

SystemParams with_lambda(double lambda) {
    SystemParams::Fields f;
    f.lambda = lambda;
    return SystemParams(f);
}

// Probability generating functional of a PPP, integrated numerically:
// log L(s) = -2 pi lambda int_0^inf (1 - exp(-s l(x))) x dx with the bounded
// path loss. In the mean-count treatment the disk x < r0 contributes
// s r0^-alpha per expected point instead.
double laplace_oracle(double s, double lambda, double r0, double alpha, NearFieldMode mode) {
    boost::math::quadrature::tanh_sinh<double> q;
    auto far = [&](double x) { return -std::expm1(-s * std::pow(x, -alpha)) * x; };
    const double outer = q.integrate(far, r0, std::numeric_limits<double>::infinity());
    const double near_point = s * std::pow(r0, -alpha);
    const double inner = mode == NearFieldMode::PaperMean ? near_point * r0 * r0 / 2.0
                                                          : -std::expm1(-near_point) * r0 * r0 / 2.0;
    return std::exp(-2.0 * std::numbers::pi * lambda * (outer + inner));
}

}  // namespace

TEST(Laplace, MatchesNumericalGeneratingFunctional) {
    for (auto mode : {NearFieldMode::PaperMean, NearFieldMode::ExactPoisson}) {
        for (double lambda : {1e-5, 1e-4, 1e-3}) {
            for (double s : {1.0, 16.0, 160.0, 800.0, 1e4}) {
                for (double alpha : {3.0, 4.0}) {
                    SystemParams::Fields f;
                    f.lambda = lambda;
                    f.alpha = alpha;
                    const SystemParams p(f);
                    const double expected = laplace_oracle(s, lambda, 4.0, alpha, mode);
                    EXPECT_NEAR(laplace_interference(s, lambda, p, mode), expected, 1e-10 * expected)
                        << "s=" << s << " lambda=" << lambda << " alpha=" << alpha;
                }
            }
        }
    }
}

TEST(Laplace, TrivialCases) {
    const SystemParams p;
    EXPECT_EQ(laplace_interference(0.0, 1e-3, p), 1.0);
    EXPECT_EQ(laplace_interference(10.0, 0.0, p), 1.0);
    EXPECT_THROW(laplace_interference(-1.0, 1e-3, p), DomainError);
    EXPECT_THROW(laplace_interference(1.0, -1e-3, p), DomainError);
}

TEST(Laplace, DecreasingInSAndDensity) {
    const SystemParams p;
    double prev = 1.0;
    for (double s = 1.0; s < 1e5; s *= 2.0) {
        const double v = laplace_interference(s, 1e-4, p);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_GT(laplace_interference(100.0, 1e-5, p), laplace_interference(100.0, 1e-4, p));
}

TEST(Laplace, ExactNearFieldNeverBelowMeanCount) {
    // 1 - e^-x <= x, so the exact treatment removes less probability mass.
    const SystemParams p;
    for (double s : {1.0, 160.0, 1e4, 1e6}) {
        EXPECT_GE(laplace_interference(s, 1e-3, p, NearFieldMode::ExactPoisson),
                  laplace_interference(s, 1e-3, p, NearFieldMode::PaperMean));
    }
}

TEST(Xi, ReferenceValue) {
    const SystemParams p;
    // s = Omega d0^alpha = 160.
    EXPECT_NEAR(xi(1e-5, 20.0, 4.0, p), 0.99940091, 5e-9);
    EXPECT_DOUBLE_EQ(xi(1e-5, 20.0, 4.0, p), laplace_interference(160.0, 1e-5, p));
    EXPECT_THROW(xi(1e-5, 0.0, 4.0, p), DomainError);
    EXPECT_THROW(xi(1e-5, 20.0, 0.5, p), DomainError);
}

TEST(MeanInterference, CampbellIntegral) {
    boost::math::quadrature::tanh_sinh<double> q;
    for (double alpha : {2.5, 3.0, 4.0, 6.0}) {
        SystemParams::Fields f;
        f.alpha = alpha;
        const SystemParams p(f);
        const double outer = q.integrate([&](double x) { return std::pow(x, 1.0 - alpha); }, 4.0,
                                         std::numeric_limits<double>::infinity());
        const double expected = 2.0 * std::numbers::pi * 1e-4 * (outer + std::pow(4.0, -alpha) * 8.0);
        EXPECT_NEAR(mean_interference(1e-4, p), expected, 1e-9 * expected) << alpha;
    }
    EXPECT_NEAR(mean_interference(1e-5, SystemParams{}), 3.9269908e-6, 1e-12);
}

TEST(OutageNC, FloorsAtTheBaseline) {
    EXPECT_NEAR(outage_nc_floor(with_lambda(1e-5)), 5.9909e-4, 1e-7);
    EXPECT_NEAR(outage_nc_floor(with_lambda(1e-3)), 0.058167, 1e-5);
    EXPECT_NEAR(outage_nc_floor(with_lambda(1e-5), NearFieldMode::ExactPoisson), 5.186e-4, 1e-6);
    EXPECT_NEAR(outage_nc_floor(with_lambda(1e-3), NearFieldMode::ExactPoisson), 0.05055, 1e-4);
    EXPECT_EQ(outage_nc_floor(with_lambda(0.0)), 0.0);
}

TEST(OutageNC, ReferenceOperatingPoint) {
    EXPECT_NEAR(outage_nc(with_lambda(1e-5), 0.5, 1.9652e8), 6.0153e-4, 6.0153e-4 * 5e-3);
}

TEST(OutageNC, NoiseOnlyIsRayleigh) {
    SystemParams::Fields f;
    f.lambda = 0.0;
    f.sigmaC2 = 0.0;
    const SystemParams p(f);
    for (double pt : {1e2, 1e4, 1e6}) EXPECT_NEAR(outage_nc(p, 0.3, pt), -std::expm1(-160.0 / pt), 1e-15);
}

TEST(OutageNC, MonotoneAndBoundedByFloor) {
    const auto p = with_lambda(1e-4);
    const double floor = outage_nc_floor(p);
    double prev = 1.0;
    for (double db = 0.0; db <= 120.0; db += 5.0) {
        const double v = outage_nc(p, 0.3, db_to_linear(db));
        EXPECT_LE(v, prev);
        EXPECT_GE(v, floor);
        prev = v;
    }
    EXPECT_NEAR(outage_nc(p, 0.3, std::numeric_limits<double>::infinity()), floor, 0.0);
    // Larger split ratio to the decoder lowers outage.
    EXPECT_LT(outage_nc(p, 0.9, 1e4), outage_nc(p, 0.1, 1e4));
}

TEST(OutageNC, Domain) {
    const SystemParams p;
    EXPECT_THROW(outage_nc(p, 0.0, 1.0), DomainError);
    EXPECT_THROW(outage_nc(p, 1.1, 1.0), DomainError);
    EXPECT_THROW(outage_nc(p, 0.5, 0.0), DomainError);
}

TEST(EnergyNC, ReadoutsAt45dB) {
    const double p = db_to_linear(45.0);
    EXPECT_NEAR(energy_nc(with_lambda(1e-4), 0.3, p), 1.0076, 1e-4);
    EXPECT_NEAR(energy_nc(with_lambda(1e-3), 0.3, p), 8.831, 1e-3);
    EXPECT_NEAR(direct_energy_fraction(with_lambda(1e-3)), 0.015666, 1e-6);
}

TEST(EnergyNC, LinearInPowerAndSplit) {
    const auto p = with_lambda(1e-4);
    EXPECT_NEAR(energy_nc(p, 0.3, 2e5), 2.0 * energy_nc(p, 0.3, 1e5), 1e-12);
    EXPECT_EQ(energy_nc(p, 1.0, 1e5), 0.0);
    EXPECT_EQ(energy_nc(p, 0.3, 0.0), 0.0);
    SystemParams::Fields f;
    f.lambda = 1e-4;
    f.zeta = 0.5;
    EXPECT_NEAR(energy_nc(SystemParams(f), 0.3, 1e5), 0.5 * energy_nc(p, 0.3, 1e5), 1e-12);
}

TEST(EvaluateNC, ConsistentReport) {
    const auto p = with_lambda(1e-4);
    const auto r = evaluate_nc(p, 0.3, 1e5);
    EXPECT_EQ(r.outage, outage_nc(p, 0.3, 1e5));
    EXPECT_EQ(r.floor, outage_nc_floor(p));
    EXPECT_EQ(r.energy, energy_nc(p, 0.3, 1e5));
    EXPECT_NEAR(1.0 - r.laplace_at_threshold, r.floor, 1e-15);
}
