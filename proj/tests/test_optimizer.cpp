#include <cmath>

#include <gtest/gtest.h>

#include "swipt/optimizer.hpp"

using namespace swipt;

namespace {

// Smallest P satisfying both constraints at a given split, by bisection on the
// analytic metrics alone.
double brute_min_power(const SystemParams& p, double nu, double c_i, double c_h) {
    auto ok = [&](double pt) { return outage_nc(p, nu, pt) <= c_i && energy_nc(p, nu, pt) >= c_h; };
    double lo = 1e-6, hi = 1.0;
    while (!ok(hi)) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace

struct TableRow {
    double c_i, c_h;
    bool joint;
    double p_star, nu_star, outage, energy;
};

class ReferenceOptimum : public ::testing::TestWithParam<TableRow> {};

TEST_P(ReferenceOptimum, MatchesReference) {
    const auto& row = GetParam();
    const SystemParams p;
    const auto spec = row.joint ? ConstraintSpec::joint(row.c_i, row.c_h) : ConstraintSpec::fixed(row.c_i, row.c_h, 0.5);
    const auto r = optimize(p, spec);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR(*r.p_t_star, row.p_star, row.p_star * 1e-8);
    EXPECT_NEAR(*r.nu_d_star, row.nu_star, row.nu_star * 1e-7);
    EXPECT_NEAR(r.achieved_outage, row.outage, row.outage * 1e-4);
    EXPECT_NEAR(r.achieved_energy, row.energy, row.energy * 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Baseline, ReferenceOptimum,
                         ::testing::Values(TableRow{1e-3, 1e3, false, 196521745.6, 0.5, 6.0153e-4, 1000.0},
                                           TableRow{1e-3, 1e3, true, 98661263.09, 0.004058232, 1e-3, 1000.0},
                                           TableRow{1e-2, 1e-1, false, 50787.9147, 0.5, 0.01, 0.2584340708},
                                           TableRow{1e-2, 1e-1, true, 39470.14937, 0.7510501624, 0.01, 0.1}));

TEST(FixedSplit, AgreesWithBisection) {
    for (double lambda : {1e-5, 1e-4}) {
        const auto p = SystemParams{}.with_lambda(lambda);
        for (double nu : {0.1, 0.5, 0.9}) {
            for (auto [c_i, c_h] : {std::pair{0.05, 1e-2}, std::pair{0.01, 1.0}, std::pair{0.2, 1e-4}}) {
                const auto r = optimize(p, ConstraintSpec::fixed(c_i, c_h, nu));
                ASSERT_TRUE(r.feasible);
                EXPECT_NEAR(*r.p_t_star, brute_min_power(p, nu, c_i, c_h), *r.p_t_star * 1e-9);
                EXPECT_TRUE(r.binding.outage || r.binding.harvest);
            }
        }
    }
}

TEST(JointSplit, NoGridSplitBeatsTheRoot) {
    const SystemParams p;
    for (auto [c_i, c_h] : {std::pair{1e-2, 1e-1}, std::pair{5e-3, 10.0}, std::pair{0.1, 1e-3}}) {
        const auto r = optimize(p, ConstraintSpec::joint(c_i, c_h));
        ASSERT_TRUE(r.feasible);
        EXPECT_TRUE(r.binding.outage && r.binding.harvest);
        for (double nu = 0.01; nu < 1.0; nu += 0.01) {
            EXPECT_GE(brute_min_power(p, nu, c_i, c_h), *r.p_t_star * (1.0 - 1e-9)) << nu;
        }
    }
}

TEST(JointSplit, NeverWorseThanAnyFixedSplit) {
    const SystemParams p;
    const auto joint = optimize(p, ConstraintSpec::joint(1e-2, 1e-1));
    for (double nu = 0.05; nu < 1.0; nu += 0.05) {
        const auto fixed = optimize(p, ConstraintSpec::fixed(1e-2, 1e-1, nu));
        EXPECT_LE(*joint.p_t_star, *fixed.p_t_star * (1.0 + 1e-12));
    }
}

TEST(Feasibility, TargetAtOrBelowFloorIsInfeasible) {
    const SystemParams p;
    const double floor = outage_nc_floor(p);
    for (double c_i : {floor * 0.5, floor}) {
        const auto r = optimize(p, ConstraintSpec::joint(c_i, 1.0));
        EXPECT_FALSE(r.feasible);
        EXPECT_FALSE(r.p_t_star.has_value());
        EXPECT_FALSE(r.nu_d_star.has_value());
        EXPECT_NEAR(r.floor, floor, 1e-15);
    }
    EXPECT_TRUE(optimize(p, ConstraintSpec::joint(floor * 1.01, 1.0)).feasible);
}

TEST(Constants, Definitions) {
    const SystemParams p;
    const auto g = optimizer_constants(p, ConstraintSpec::joint(1e-2, 1e-1));
    EXPECT_NEAR(g.g0, std::log(xi(1e-5, 20.0, 4.0, p) / 0.99), 1e-15);
    EXPECT_NEAR(g.g2, 160.0, 1e-12);
    EXPECT_NEAR(g.g3, 160.0, 1e-12);
    EXPECT_NEAR(g.g1, 0.1 / (6.25e-6 + mean_interference(1e-5, p)), 1e-9);
}

TEST(JointSplit, RootSolvesTheQuadratic) {
    const SystemParams p;
    const auto spec = ConstraintSpec::joint(1e-2, 1e-1);
    const auto g = optimizer_constants(p, spec);
    const double nu = *optimize(p, spec).nu_d_star;
    const double b = g.g0 * g.g1 - g.g2 + g.g3;
    EXPECT_NEAR(g.g2 * nu * nu + b * nu - g.g3, 0.0, 1e-9 * g.g3);
}

TEST(JointSplit, NoConversionNoise) {
    SystemParams::Fields f;
    f.sigmaC2 = 0.0;
    const SystemParams p(f);
    // Outage-limited: P = G2 / G0 and the remaining share goes to harvesting.
    const auto r = optimize(p, ConstraintSpec::joint(1e-2, 1e-3));
    ASSERT_TRUE(r.feasible);
    const auto g = optimizer_constants(p, ConstraintSpec::joint(1e-2, 1e-3));
    EXPECT_NEAR(*r.p_t_star, g.g2 / g.g0, 1e-6);
    EXPECT_NEAR(r.achieved_outage, 1e-2, 1e-12);
    EXPECT_NEAR(r.achieved_energy, 1e-3, 1e-12);
    // Harvest-limited: the infimum sits at nu_d = 0 and is not attained.
    const auto h = optimize(p, ConstraintSpec::joint(0.5, 1e3));
    ASSERT_TRUE(h.feasible);
    EXPECT_FALSE(h.attained);
    EXPECT_EQ(*h.nu_d_star, 0.0);
}

TEST(Dispatch, ModeMismatchThrows) {
    const SystemParams p;
    EXPECT_THROW(min_power_joint(p, ConstraintSpec::fixed(0.1, 1.0, 0.5)), DomainError);
    EXPECT_THROW(min_power_fixed_split(p, ConstraintSpec::joint(0.1, 1.0)), DomainError);
}
