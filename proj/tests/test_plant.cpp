#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "greybox/boundary.h"
#include "greybox/errors.h"
#include "greybox/plant.h"
#include "support.h"

using namespace greybox;

namespace {

Scenario wep() {
    Scenario sc;
    sc.name = "wep";
    sc.mode = Mode::wep;
    sc.htes_initial = {43.0};
    sc.ctes_initial = {16.0};
    sc.t_amb = TimeSeries::constant(10.0);
    sc.set_point = SetPoint{"HTES_T_1", 72.0, Crossing::rising};
    sc.horizon = 3600.0;
    return sc;
}

Scenario wec() {
    Scenario sc;
    sc.name = "wec";
    sc.mode = Mode::wec;
    sc.htes_initial = {20.0};
    sc.ctes_initial = {16.0};
    sc.t_amb = TimeSeries::constant(10.0);
    sc.flows = {{"HT", 1.0}, {"MT", 2.4}};
    sc.v_set_oc = 10.0;
    sc.set_point = SetPoint{"HTES_T_1", 40.0, Crossing::rising};
    sc.horizon = 20000.0;
    return sc;
}

bool has_connection(const PlantSystem& s, const std::string& from, const std::string& to) {
    return std::any_of(s.wiring.begin(), s.wiring.end(),
                       [&](const Connection& c) { return c.from == from && c.to == to; });
}

}  // namespace

TEST(Mode, Parse) {
    EXPECT_EQ(mode_from_string("SEP"), Mode::sep);
    EXPECT_EQ(mode_from_string("wec"), Mode::wec);
    EXPECT_THROW(mode_from_string("XYZ"), ConfigError);
    EXPECT_EQ(to_string(Mode::sec), "SEC");
}

TEST(Assemble, SepWiring) {
    const auto s = assemble(Mode::sep, testsupport::default_plant());
    EXPECT_TRUE(s.has(Component::adcm));
    EXPECT_TRUE(s.has(Component::chp));
    EXPECT_TRUE(s.has(Component::oc));
    EXPECT_FALSE(s.has(Component::revhp));
    EXPECT_EQ(s.htes.load_layer, 70);
    EXPECT_TRUE(has_connection(s, "HTES:layer70", "AdCM:HT_rl"));
    EXPECT_TRUE(has_connection(s, "AdCM:HT_fl", "HTES:layer1"));
    EXPECT_TRUE(has_connection(s, "AdCM:LT_fl", "CTES:layer1"));
    EXPECT_TRUE(has_connection(s, "AdCM:MT_fl", "OC:MT_rl"));
    EXPECT_NE(std::find(s.channels.begin(), s.channels.end(), "P_th_AdCM_LT"), s.channels.end());
}

TEST(Assemble, WepWiring) {
    const auto s = assemble(Mode::wep, testsupport::default_plant());
    EXPECT_EQ(s.components, std::vector<Component>{Component::chp});
    EXPECT_EQ(s.htes.load_layer, 60);
    EXPECT_TRUE(has_connection(s, "CHP:HT_fl", "HTES:layer90"));
    EXPECT_TRUE(has_connection(s, "HTES:layer60", "Load_H:fl"));
    for (const auto& c : s.wiring) EXPECT_EQ(c.from.find("AdCM"), std::string::npos);
}

TEST(Assemble, MissingBlockNamed) {
    auto cfg = testsupport::default_plant();
    cfg.adcm.reset();
    try {
        assemble(Mode::sep, cfg);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::find(e.keys().begin(), e.keys().end(), "adcm"), e.keys().end());
    }
    EXPECT_NO_THROW(assemble(Mode::wep, cfg));
}

TEST(Assemble, SensorDivisibility) {
    auto cfg = testsupport::default_plant();
    cfg.htes->layers = 50;
    cfg.htes->load_layer = 10;
    EXPECT_THROW(assemble(Mode::wep, cfg), ConfigError);
}

TEST(Step, AllOffAdiabaticIsStationary) {
    auto cfg = testsupport::default_plant();
    cfg.htes->k = 0.0;
    cfg.ctes->k = 0.0;
    const auto sys = assemble(Mode::wep, cfg);
    auto sc = wep();
    sc.switches[Component::chp] = {{0.0, Switch::off}};
    sc.htes_initial = {55.0};
    auto st = initial_state(sys, sc);
    const auto start = st;
    for (int k = 0; k < 720; ++k) st = step(sys, sc, st, k * 5.0, 5.0);
    EXPECT_EQ(st.htes.temps, start.htes.temps);
    EXPECT_EQ(st.ctes.temps, start.ctes.temps);
    EXPECT_EQ(st.chp.p_th, 0.0);
}

TEST(Step, ChpFirstOrderLag) {
    const auto sys = assemble(Mode::wep, testsupport::default_plant());
    const auto sc = wep();
    auto st = initial_state(sys, sc);
    const double dt = 5.0;
    const double target = (1.0 - std::exp(-1.0)) * 10200.0;
    double t = 0.0;
    double prev = st.chp.p_th;
    double crossing = -1.0;
    while (t < 2000.0) {
        st = step(sys, sc, st, t, dt);
        if (st.chp.p_th >= target) {
            crossing = t + dt * (target - prev) / (st.chp.p_th - prev);
            break;
        }
        prev = st.chp.p_th;
        t += dt;
    }
    EXPECT_NEAR(crossing, testsupport::kRowC, dt);
}

TEST(Step, HalvingDtBarelyMovesProfile) {
    const auto cfg = testsupport::default_plant();
    auto a = wep();
    a.set_point.reset();
    auto b = a;
    b.dt = 2.5;
    const auto la = run(a, cfg);
    const auto lb = run(b, cfg);
    ASSERT_EQ(la.rows.size(), lb.rows.size());
    double worst = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const auto ca = la.column("HTES_T_" + std::to_string(i));
        const auto cb = lb.column("HTES_T_" + std::to_string(i));
        for (std::size_t r = 0; r < ca.size(); ++r) worst = std::max(worst, std::abs(ca[r] - cb[r]));
    }
    EXPECT_LT(worst, 1e-3);
}

TEST(Step, SwitchOffIsolation) {
    // With the heat pump off, nothing about its circuits may reach the tanks.
    const auto cfg = testsupport::default_plant();
    auto other = cfg;
    other.revhp->heating_kw = PolyMap(2, {50.0, 1.0, 1.0, 0.0, 0.0, 0.0});
    other.revhp->v_ht = 0.3;
    auto sc = wec();
    sc.switches[Component::revhp] = {{0.0, Switch::on}, {60.0, Switch::off}};
    auto sc2 = sc;
    sc2.flows["HT"] = 1.25;
    const auto s1 = assemble(Mode::wec, cfg);
    const auto s2 = assemble(Mode::wec, other);
    auto a = initial_state(s1, sc);
    auto b = a;
    for (int k = 12; k < 400; ++k) {
        a = step(s1, sc, a, k * 5.0, 5.0);
        b = step(s2, sc, b, k * 5.0, 5.0);
    }
    EXPECT_EQ(a.htes.temps, b.htes.temps);
    EXPECT_EQ(a.ctes.temps, b.ctes.temps);
}

TEST(Run, AllOffDriftsOnlyByLosses) {
    const auto cfg = testsupport::default_plant();
    auto sc = wep();
    sc.switches[Component::chp] = {{0.0, Switch::off}};
    sc.htes_initial = {50.0};
    sc.t_amb = TimeSeries::constant(20.0);
    sc.set_point.reset();
    const auto log = run(sc, cfg);
    const auto sys = assemble(Mode::wep, cfg);
    const double rate = cfg.htes->k * sys.htes_layers.a_ext / (sys.htes_layers.mass * cfg.htes->fluid.cp);
    const double expected = 20.0 + 30.0 * std::exp(-rate * 3600.0);
    for (int i = 1; i <= 9; ++i) {
        EXPECT_NEAR(log.column("HTES_T_" + std::to_string(i)).back(), expected, 1e-9);
    }
    EXPECT_LT(log.htes_audit.rel_error, 1e-6);
}

TEST(Run, WecTerminatesAtSetPointWithClosedAudit) {
    const auto log = run(wec(), testsupport::default_plant());
    EXPECT_EQ(log.reason, "setpoint");
    EXPECT_GT(log.end_time, 0.0);
    EXPECT_LT(log.end_time, 20000.0);
    EXPECT_GE(log.column("HTES_T_1").back(), 38.0);
    EXPECT_LT(log.htes_audit.rel_error, 5e-3);
    EXPECT_LT(log.ctes_audit.rel_error, 5e-3);
    EXPECT_EQ(log.channels.front(), "time_s");
    const auto times = log.column("time_s");
    for (std::size_t i = 1; i < times.size(); ++i) EXPECT_EQ(times[i] - times[i - 1], 60.0);
}

TEST(Run, Deterministic) {
    const auto cfg = testsupport::default_plant();
    auto sc = wec();
    sc.horizon = 1800.0;
    const auto a = run(sc, cfg);
    const auto b = run(sc, cfg);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(a.end_time, b.end_time);
}

TEST(Run, HeatingLoadDraw) {
    const auto cfg = testsupport::default_plant();
    auto sc = wep();
    sc.switches[Component::chp] = {{0.0, Switch::off}};
    sc.htes_initial = {60.0};
    sc.heating_load = TimeSeries::constant(3000.0);
    sc.set_point.reset();
    sc.horizon = 600.0;
    const auto log = run(sc, cfg);
    EXPECT_NEAR(log.column("m_dot_Load_H").front(), 900.0 / 34395.0, 1e-12);
    // A cold tank cannot serve the load; the draw saturates at the HVAC flow.
    sc.htes_initial = {30.0};
    EXPECT_EQ(run(sc, cfg).column("m_dot_Load_H").front(), cfg.loads->m_hvac);
}

TEST(Run, ScenarioValidation) {
    const auto cfg = testsupport::default_plant();
    auto sc = wep();
    sc.dt = 7.0;
    EXPECT_THROW(run(sc, cfg), ConfigError);
    sc.dt = 30.0;
    try {
        run(sc, cfg);
        FAIL() << "dt above the stability bound accepted";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("dt_max"), std::string::npos);
    }
    sc = wep();
    sc.switches[Component::adcm] = {{0.0, Switch::on}};
    EXPECT_THROW(run(sc, cfg), ConfigError);
    sc = wep();
    sc.set_point = SetPoint{"HTES_T_10", 1.0, Crossing::rising};
    EXPECT_THROW(run(sc, cfg), ConfigError);
    sc = wep();
    sc.mode = Mode::sep;
    sc.heating_load = TimeSeries::constant(100.0);
    EXPECT_THROW(run(sc, cfg), ConfigError);
}

TEST(Run, SetPointAlreadyMetEndsAtZero) {
    auto sc = wep();
    sc.htes_initial = {80.0};
    const auto log = run(sc, testsupport::default_plant());
    EXPECT_EQ(log.reason, "setpoint");
    EXPECT_EQ(log.end_time, 0.0);
    EXPECT_EQ(log.rows.size(), 1u);
}

TEST(Boundary, Lookup) {
    const TimeSeries s{{0.0, 60.0}, {10.0, 20.0}};
    EXPECT_EQ(lookup_boundary(s, 0.0), 10.0);
    EXPECT_EQ(lookup_boundary(s, 60.0), 20.0);
    EXPECT_EQ(lookup_boundary(s, 30.0), 15.0);
    EXPECT_EQ(lookup_boundary(s, 1e6), 20.0);
    EXPECT_EQ(lookup_boundary(s, -5.0), 10.0);
    EXPECT_THROW(lookup_boundary(TimeSeries{}, 0.0), ConfigError);
}
