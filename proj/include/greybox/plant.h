#pragma once

// Whole-plant simulation: wires machines, tanks, outdoor coil and loads for
// one operating mode and integrates tank layers plus the CHP thermal state
// with fixed-step RK4.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greybox/boundary.h"
#include "greybox/loads.h"
#include "greybox/machines.h"
#include "greybox/outdoor_coil.h"
#include "greybox/storage.h"

namespace greybox {

enum class Mode { sep, wep, sec, wec };

// Accepts "SEP", "WEP", "SEC", "WEC" (case-insensitive); throws ConfigError.
Mode mode_from_string(std::string_view token);
std::string to_string(Mode m);

struct PlantConfig {
    std::optional<AdcmParams> adcm;
    std::optional<ChpParams> chp;
    std::optional<RevHpParams> revhp;
    std::optional<OcParams> oc;
    std::optional<TankGeometry> htes;
    std::optional<TankGeometry> ctes;
    std::optional<LoadParams> loads;
    int adcm_tap_layer = 70;  // HTES layer feeding the AdCM HT circuit
    double omega = kDefaultOmega;
};

enum class Component { adcm, chp, revhp, oc };
std::string to_string(Component c);

struct Connection {
    std::string from;
    std::string to;
};

// Resolved topology for one mode. Tank geometries already carry the
// mode-specific tap layer.
struct PlantSystem {
    Mode mode = Mode::wep;
    PlantConfig config;
    TankGeometry htes;
    TankGeometry ctes;
    LayerGeometry htes_layers;
    LayerGeometry ctes_layers;
    std::vector<Component> components;
    std::vector<Connection> wiring;
    std::vector<std::string> channels;  // log channel names, excluding time_s

    bool has(Component c) const;
};

// Throws ConfigError listing the missing blocks for the mode.
PlantSystem assemble(Mode mode, const PlantConfig& config);

struct SwitchEvent {
    double t = 0.0;  // s
    Switch value = Switch::off;
};

enum class Crossing { rising, falling };

struct SetPoint {
    std::string sensor;  // e.g. "CTES_T_4"
    double threshold = 0.0;
    Crossing direction = Crossing::falling;
};

struct Scenario {
    std::string name;
    Mode mode = Mode::wep;
    std::vector<double> htes_initial{20.0};  // one value means uniform
    std::vector<double> ctes_initial{20.0};
    TimeSeries t_amb = TimeSeries::constant(20.0);
    TimeSeries heating_load = TimeSeries::constant(0.0);  // W
    TimeSeries cooling_load = TimeSeries::constant(0.0);  // W
    // Components without an entry are on from t = 0 when the mode uses them.
    std::map<Component, std::vector<SwitchEvent>> switches;
    std::map<std::string, double> flows;  // "HT", "MT", "LT" overrides, m3/h
    double v_oc = 4.7;                    // m3/h
    double v_set_oc = 10.0;               // V
    std::optional<SetPoint> set_point;
    double dt = 5.0;           // s
    double horizon = 36000.0;  // s
};

struct PlantState {
    TankState htes;
    TankState ctes;
    ChpState chp;
    // Integrated boundary heat per tank: net and absolute, J.
    std::array<double, 4> energy{};
};

PlantState initial_state(const PlantSystem& sys, const Scenario& sc);

// Largest stable step: half the shortest layer residence time at the
// highest face flow the wiring can produce.
double max_stable_dt(const PlantSystem& sys, const Scenario& sc);

// One RK4 step. Throws NumericalDivergence naming the first non-finite layer.
PlantState step(const PlantSystem& sys, const Scenario& sc, const PlantState& state, double t, double dt);

// Channel values at (state, t) in the order of sys.channels.
std::vector<double> outputs(const PlantSystem& sys, const Scenario& sc, const PlantState& state, double t);

struct TankAudit {
    double delta_h = 0.0;     // J
    double net_flux = 0.0;    // J
    double gross_flux = 0.0;  // J
    double rel_error = 0.0;
};

struct SimLog {
    std::vector<std::string> channels;  // first entry is "time_s"
    std::vector<std::vector<double>> rows;
    double end_time = 0.0;    // s
    std::string reason;       // "setpoint" or "horizon"
    TankAudit htes_audit;
    TankAudit ctes_audit;

    // Column by name; throws InvalidInput if absent.
    std::vector<double> column(std::string_view name) const;
};

inline constexpr double kLogInterval = 60.0;  // s

SimLog run(const PlantSystem& sys, const Scenario& sc);
SimLog run(const Scenario& sc, const PlantConfig& config);

}  // namespace greybox
