#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "greybox/config.h"
#include "greybox/csv.h"
#include "greybox/errors.h"
#include "greybox/svg_plot.h"

using namespace greybox;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "greybox_test_io";
    std::filesystem::create_directories(dir);
    return dir / name;
}

const char* kMinimalPlant = R"({
  "chp": {"flow_map": [0.43, -0.15, 0.0]},
  "htes": {"diameter": 1.0, "height": 1.8, "layers": 90, "load_layer": 60},
  "ctes": {"diameter": 1.0, "height": 1.8, "layers": 40, "load_layer": 1}
})";

}  // namespace

TEST(Csv, ParseAndColumns) {
    const auto t = parse_csv("time_s,a,b\n0,1.5,2\n60,2.5,-3e2\n");
    EXPECT_EQ(t.header, (std::vector<std::string>{"time_s", "a", "b"}));
    EXPECT_EQ(t.column("b"), (std::vector<double>{2.0, -300.0}));
    EXPECT_EQ(t.column(1), (std::vector<double>{1.5, 2.5}));
    EXPECT_TRUE(t.has("a"));
    EXPECT_FALSE(t.has("c"));
    EXPECT_THROW(t.column("c"), InvalidInput);
}

TEST(Csv, MalformedNamesLine) {
    try {
        parse_csv("a,b\n1,2\n3\n");
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_csv("a,b\n1,x\n"), InvalidInput);
    EXPECT_THROW(parse_csv(""), InvalidInput);
}

TEST(Csv, FormatAndRoundTrip) {
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333");
    EXPECT_EQ(format_number(12345678.0), "1.23457e+07");
    CsvTable t{{"time_s", "x"}, {{0.0, 1.25}, {60.0, -7.5}}};
    std::ostringstream os;
    write_csv(os, t);
    EXPECT_EQ(os.str(), "time_s,x\n0,1.25\n60,-7.5\n");
    const auto back = parse_csv(os.str());
    EXPECT_EQ(back.rows, t.rows);
}

TEST(Config, MinimalPlant) {
    const auto cfg = parse_plant_config(kMinimalPlant);
    ASSERT_TRUE(cfg.chp);
    EXPECT_FALSE(cfg.adcm);
    EXPECT_EQ(cfg.htes->layers, 90);
    EXPECT_EQ(cfg.ctes->load_layer, 1);
    EXPECT_NEAR(cfg.chp->flow_map(43.0), -6.02, 1e-12);
}

TEST(Config, UnknownKeyRejectedAnnotationIgnored) {
    const std::string bad = R"({"chp": {"flow_map": [1, 0, 0], "flowmap": 3}})";
    try {
        parse_plant_config(bad);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.keys(), std::vector<std::string>{"chp.flowmap"});
    }
    EXPECT_NO_THROW(parse_plant_config(R"({"_note": "x", "chp": {"flow_map": [1, 0, 0], "_src": 1}})"));
}

TEST(Config, WrongCoefficientCount) {
    EXPECT_THROW(parse_plant_config(R"({"chp": {"flow_map": [1, 0]}})"), ConfigError);
    EXPECT_THROW(parse_plant_config("{not json"), ConfigError);
}

TEST(Config, OutdoorCoilConductance) {
    const auto cfg = parse_plant_config(R"({"outdoor_coil": {"area": 100.0, "u": 20.0}})");
    EXPECT_DOUBLE_EQ(cfg.oc->ua, 2000.0);
    const auto direct = parse_plant_config(R"({"outdoor_coil": {"area": 100.0, "ua": 1234.0}})");
    EXPECT_DOUBLE_EQ(direct.oc->ua, 1234.0);
}

TEST(Config, Scenario) {
    const auto sc = parse_scenario(R"({
      "mode": "wep", "htes_initial": 43.0, "ctes_initial": [16.0],
      "ambient": {"t": [0, 3600], "v": [10, 12]},
      "switches": {"chp": [[0, 1], [1800, 0]]},
      "set_point": {"sensor": "HTES_T_1", "threshold": 72, "direction": "rising"},
      "dt": 5, "horizon_s": 7200
    })", ".");
    EXPECT_EQ(sc.mode, Mode::wep);
    EXPECT_EQ(sc.name, "WEP");
    EXPECT_EQ(sc.htes_initial, std::vector<double>{43.0});
    EXPECT_EQ(sc.t_amb.v, (std::vector<double>{10, 12}));
    ASSERT_EQ(sc.switches.at(Component::chp).size(), 2u);
    EXPECT_EQ(sc.switches.at(Component::chp)[1].value, Switch::off);
    ASSERT_TRUE(sc.set_point);
    EXPECT_EQ(sc.set_point->direction, Crossing::rising);
    EXPECT_EQ(sc.horizon, 7200.0);
}

TEST(Config, ScenarioErrors) {
    EXPECT_THROW(parse_scenario(R"({"mode": "xyz", "htes_initial": 1, "ctes_initial": 1})", "."), ConfigError);
    EXPECT_THROW(parse_scenario(R"({"mode": "wep", "htes_initial": 1, "ctes_initial": 1,
                                   "switches": {"chp": [[0, 2]]}})",
                                "."),
                 ConfigError);
    EXPECT_THROW(parse_scenario(R"({"mode": "wep", "htes_initial": 1, "ctes_initial": 1, "ambiant": 3})", "."),
                 ConfigError);
}

TEST(Config, BoundaryFromCsv) {
    const auto csv = scratch("amb.csv");
    {
        std::ofstream out(csv);
        out << "time_s,T_amb\n0,5\n600,15\n";
    }
    const auto sc = parse_scenario(R"({"mode": "wep", "htes_initial": 1, "ctes_initial": 1,
                                       "ambient": {"file": "amb.csv", "column": "T_amb"}})",
                                   csv.parent_path());
    EXPECT_EQ(sc.t_amb.t, (std::vector<double>{0, 600}));
    EXPECT_EQ(sc.t_amb.v, (std::vector<double>{5, 15}));
}

TEST(Config, ShippedFilesLoad) {
    const std::filesystem::path data = GREYBOX_DATA_DIR;
    const auto cfg = load_plant_config(data / "plant_default.json");
    EXPECT_TRUE(cfg.adcm && cfg.chp && cfg.revhp && cfg.oc && cfg.htes && cfg.ctes && cfg.loads);
    for (const char* name : {"sep.json", "wep.json", "sec.json", "wec.json"}) {
        EXPECT_NO_THROW(load_scenario(data / "scenarios" / name)) << name;
    }
}

TEST(Svg, DeterministicAndWellFormed) {
    const std::vector<PlotSeries> s{{"sim", {0, 60, 120}, {1, 2, 3}, true}, {"meas", {0, 60, 120}, {1, 2.5, 2.9}, false}};
    const auto a = render_svg(s, "demo");
    EXPECT_EQ(a, render_svg(s, "demo"));
    EXPECT_EQ(a.rfind("<svg", 0), 0u);
    EXPECT_NE(a.find("</svg>"), std::string::npos);
    EXPECT_NE(a.find("stroke-dasharray"), std::string::npos);
    EXPECT_NE(a.find("demo"), std::string::npos);
}
