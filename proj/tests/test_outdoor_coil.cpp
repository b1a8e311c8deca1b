#include <gtest/gtest.h>

#include <cmath>

#include "greybox/errors.h"
#include "greybox/outdoor_coil.h"
#include "support.h"

using namespace greybox;

TEST(Fan, AffinityLaws) {
    const OcParams p;
    const auto full = fan_state(p, 10.0, Switch::on);
    EXPECT_EQ(full.rpm, 480.0);
    EXPECT_EQ(full.p_el, 900.0);
    EXPECT_EQ(full.m_air, 8.0);
    const auto half = fan_state(p, 5.0, Switch::on);
    EXPECT_EQ(half.rpm, 240.0);
    EXPECT_EQ(half.p_el, 112.5);
    EXPECT_EQ(fan_state(p, 7.0, Switch::off).p_el, 0.0);
}

TEST(Fan, VoltageRange) {
    const OcParams p;
    EXPECT_THROW(fan_state(p, -0.1, Switch::on), InvalidInput);
    EXPECT_THROW(fan_state(p, 10.5, Switch::on), InvalidInput);
}

TEST(Effectiveness, Examples) {
    EXPECT_EQ(ntu_effectiveness(100.0, 200.0, 0.0), 0.0);
    EXPECT_NEAR(ntu_effectiveness(100.0, 1e300, 100.0), 0.632121, 1e-6);
    EXPECT_NEAR(ntu_effectiveness(100.0, 100.0, 100.0), 0.5, 1e-15);
    EXPECT_THROW(ntu_effectiveness(0.0, 1.0, 1.0), InvalidInput);
}

TEST(Effectiveness, ZeroCapacityRatioBranch) {
    // C_r = 0 exactly only when C_max is infinite.
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_NEAR(ntu_effectiveness(1.0, inf, 1.0), 1.0 - std::exp(-1.0), 1e-15);
}

TEST(Effectiveness, BoundsAndMonotonicity) {
    double prev_row[101] = {};
    for (int i = 0; i <= 100; ++i) {
        const double ntu = 0.2 * i;
        double prev_cr = 2.0;
        for (int j = 0; j <= 100; ++j) {
            const double cr = 0.01 * j;
            const double c_max = cr > 0.0 ? 1.0 / cr : std::numeric_limits<double>::infinity();
            const double eps = ntu_effectiveness(1.0, c_max, ntu);
            ASSERT_GE(eps, 0.0);
            ASSERT_LT(eps, 1.0);
            ASSERT_LE(eps, prev_cr + 1e-15) << "not decreasing in C_r at ntu=" << ntu;
            if (i > 0) ASSERT_GE(eps, prev_row[j]) << "not increasing in NTU at cr=" << cr;
            prev_row[j] = eps;
            prev_cr = eps;
        }
    }
}

TEST(Effectiveness, ContinuousNearBalancedFlow) {
    for (double ntu : {0.1, 1.0, 5.0}) {
        const double limit = ntu / (1.0 + ntu);
        EXPECT_NEAR(ntu_effectiveness(1.0, 1.0 / (1.0 - 1e-5), ntu), limit, 1e-5);
    }
}

TEST(OutdoorCoil, ZeroDrivingDifference) {
    const OcParams p;
    const auto r = oc_step(p, 25.0, 25.0, 4.7, 10.0, Switch::on);
    EXPECT_EQ(r.p_th, 0.0);
    EXPECT_EQ(r.t_fl, 25.0);
}

TEST(OutdoorCoil, SwitchOffAndZeroVoltage) {
    const OcParams p;
    const auto off = oc_step(p, 40.0, 25.0, 4.7, 10.0, Switch::off);
    EXPECT_EQ(off.p_el, 0.0);
    EXPECT_EQ(off.m_dot, 0.0);
    EXPECT_EQ(off.p_th, 0.0);
    const auto idle = oc_step(p, 40.0, 25.0, 4.7, 0.0, Switch::on);
    EXPECT_EQ(idle.p_th, 0.0);
    EXPECT_EQ(idle.t_fl, 40.0);
    EXPECT_EQ(idle.t_air_out, 25.0);
}

TEST(OutdoorCoil, EnergyConsistencyAndFirstLaw) {
    testsupport::Gen gen(21);
    OcParams p;
    for (int i = 0; i < 20000; ++i) {
        p.ua = gen.uniform(100.0, 1e5);
        const double t_amb = gen.uniform(-10, 35);
        const double t_rl = t_amb + gen.uniform(-20, 40);
        const double v = gen.uniform(0.5, 8.0);
        const double volt = gen.uniform(0.5, 10.0);
        const auto r = oc_step(p, t_rl, t_amb, v, volt, Switch::on);
        const double c_h = v * p.brine.rho / 3600.0 * p.brine.cp;
        const double c_c = volt / 10.0 * p.m_air_max * p.air.cp;
        ASSERT_NEAR(c_h * (t_rl - r.t_fl), r.p_th, 1e-9 * std::max(1.0, std::abs(r.p_th)));
        ASSERT_NEAR(c_c * (r.t_air_out - t_amb), r.p_th, 1e-9 * std::max(1.0, std::abs(r.p_th)));
        if (t_rl >= t_amb) {
            ASSERT_GE(r.t_fl, t_amb - 1e-12);
            ASSERT_LE(r.t_fl, t_rl);
        }
    }
}

TEST(OutdoorCoil, LargeConductanceApproachesAmbientOnMinSide) {
    OcParams p;
    p.ua = 1e9;
    // Brine side is C_min at 0.5 m3/h against full fan air flow.
    const auto r = oc_step(p, 40.0, 20.0, 0.5, 10.0, Switch::on);
    EXPECT_NEAR(r.t_fl, 20.0, 1e-3);
    // Air side is C_min at a low fan voltage.
    const auto a = oc_step(p, 40.0, 20.0, 8.0, 0.1, Switch::on);
    EXPECT_NEAR(a.t_air_out, 40.0, 1e-3);
}

TEST(OutdoorCoil, ConductanceMatchesStep) {
    const OcParams p;
    const auto k = oc_conductance(p, 4.7, 1.5, Switch::on);
    const auto r = oc_step(p, 45.0, 30.0, 4.7, 1.5, Switch::on);
    EXPECT_NEAR(k.g * 15.0, r.p_th, 1e-9);
    EXPECT_EQ(oc_conductance(p, 4.7, 1.5, Switch::off).g, 0.0);
}
