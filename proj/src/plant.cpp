#include "greybox/plant.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "greybox/errors.h"

namespace greybox {

Mode mode_from_string(std::string_view token) {
    std::string up(token);
    for (char& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (up == "SEP") return Mode::sep;
    if (up == "WEP") return Mode::wep;
    if (up == "SEC") return Mode::sec;
    if (up == "WEC") return Mode::wec;
    throw ConfigError("unknown mode '" + std::string(token) + "' (expected SEP, WEP, SEC or WEC)", {"mode"});
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::sep: return "SEP";
        case Mode::wep: return "WEP";
        case Mode::sec: return "SEC";
        case Mode::wec: return "WEC";
    }
    return "?";
}

std::string to_string(Component c) {
    switch (c) {
        case Component::adcm: return "adcm";
        case Component::chp: return "chp";
        case Component::revhp: return "revhp";
        case Component::oc: return "outdoor_coil";
    }
    return "?";
}

bool PlantSystem::has(Component c) const {
    return std::find(components.begin(), components.end(), c) != components.end();
}

namespace {

constexpr int kHtesSensors = 9;
constexpr int kCtesSensors = 4;

std::vector<Component> components_for(Mode m) {
    switch (m) {
        case Mode::sep: return {Component::chp, Component::adcm, Component::oc};
        case Mode::wep: return {Component::chp};
        case Mode::sec: return {Component::revhp, Component::oc};
        case Mode::wec: return {Component::revhp, Component::oc};
    }
    return {};
}

void add_circuit_channels(std::vector<std::string>& ch, const std::string& comp, const std::string& circ) {
    ch.push_back(comp + "_T_rl_" + circ);
    ch.push_back(comp + "_T_fl_" + circ);
    ch.push_back("m_dot_" + comp + "_" + circ);
    ch.push_back("P_th_" + comp + "_" + circ);
}

std::vector<std::string> channel_names(const PlantSystem& sys) {
    std::vector<std::string> ch{"T_amb"};
    for (int i = 1; i <= kHtesSensors; ++i) ch.push_back("HTES_T_" + std::to_string(i));
    for (int i = 1; i <= kCtesSensors; ++i) ch.push_back("CTES_T_" + std::to_string(i));
    if (sys.has(Component::chp)) {
        add_circuit_channels(ch, "CHP", "HT");
        ch.insert(ch.end(), {"P_el_CHP", "v_fuel"});
    }
    if (sys.has(Component::adcm)) {
        for (const char* circ : {"LT", "HT", "MT"}) add_circuit_channels(ch, "AdCM", circ);
        ch.insert(ch.end(), {"COP_AdCM", "P_el_AdCM"});
    }
    if (sys.has(Component::revhp)) {
        const bool hp = sys.mode == Mode::wec;
        add_circuit_channels(ch, "RevHP", hp ? "HT" : "MT");
        add_circuit_channels(ch, "RevHP", hp ? "MT" : "LT");
        ch.insert(ch.end(), {"COP_RevHP", "P_el_RevHP"});
    }
    if (sys.has(Component::oc)) {
        add_circuit_channels(ch, "OC", "MT");
        ch.push_back("P_el_OC");
    }
    ch.insert(ch.end(), {"P_th_Load_H", "m_dot_Load_H", "P_th_Load_C", "m_dot_Load_C"});
    return ch;
}

std::vector<Connection> wiring_for(Mode m, const TankGeometry& htes, const TankGeometry& ctes) {
    const std::string h_top = "HTES:layer" + std::to_string(htes.layers);
    const std::string h_tap = "HTES:layer" + std::to_string(htes.load_layer);
    const std::string c_top = "CTES:layer" + std::to_string(ctes.layers);
    const std::string c_tap = "CTES:layer" + std::to_string(ctes.load_layer);
    std::vector<Connection> w;
    if (m == Mode::sep || m == Mode::wep) {
        w.push_back({"HTES:layer1", "CHP:HT_rl"});
        w.push_back({"CHP:HT_fl", h_top});
    }
    if (m == Mode::sep) {
        w.push_back({h_tap, "AdCM:HT_rl"});
        w.push_back({"AdCM:HT_fl", "HTES:layer1"});
        w.push_back({c_top, "AdCM:LT_rl"});
        w.push_back({"AdCM:LT_fl", "CTES:layer1"});
        w.push_back({"OC:MT_fl", "AdCM:MT_rl"});
        w.push_back({"AdCM:MT_fl", "OC:MT_rl"});
    }
    if (m == Mode::sec) {
        w.push_back({c_top, "RevHP:LT_rl"});
        w.push_back({"RevHP:LT_fl", "CTES:layer1"});
        w.push_back({"OC:MT_fl", "RevHP:MT_rl"});
        w.push_back({"RevHP:MT_fl", "OC:MT_rl"});
    }
    if (m == Mode::wec) {
        w.push_back({"HTES:layer1", "RevHP:HT_rl"});
        w.push_back({"RevHP:HT_fl", h_top});
        w.push_back({"OC:MT_fl", "RevHP:MT_rl"});
        w.push_back({"RevHP:MT_fl", "OC:MT_rl"});
    }
    if (m != Mode::sep) {
        w.push_back({h_tap, "Load_H:fl"});
        w.push_back({"Load_H:rl", "HTES:layer1"});
    }
    w.push_back({c_tap, "Load_C:fl"});
    w.push_back({"Load_C:rl", c_top});
    return w;
}

Switch switch_at(const PlantSystem& sys, const Scenario& sc, Component c, double t) {
    if (!sys.has(c)) return Switch::off;
    const auto it = sc.switches.find(c);
    if (it == sc.switches.end()) return Switch::on;
    Switch value = Switch::off;
    for (const auto& e : it->second) {
        if (e.t <= t) value = e.value;
    }
    return value;
}

struct LoopSolution {
    double x = 0.0;       // machine MT return = coil feed, degC
    double q = 0.0;       // heat carried to the coil, W
    double t_coil_rl = 0.0;
};

// Steady brine loop between a machine MT circuit and the outdoor coil:
// x = T_amb + (1/G - 1/C_h) * q(x).
LoopSolution solve_mt_loop(const std::function<double(double)>& q, double t_amb, const OcConductance& k) {
    LoopSolution sol{t_amb, 0.0, t_amb};
    const double q0 = q(t_amb);
    if (q0 == 0.0) return sol;
    if (!(k.g > 0.0)) throw NumericalDivergence("MT loop has no heat sink: outdoor coil is off while the machine runs");
    const double r = 1.0 / k.g - 1.0 / k.c_hot;
    const auto f = [&](double x) { return x - t_amb - r * q(x); };

    const double dir = q0 > 0.0 ? 1.0 : -1.0;
    double a = t_amb;
    double fa = f(a);
    double b = a;
    bool bracketed = false;
    for (double reach = 1.0;; reach = std::min(2.0 * reach, 200.0)) {
        b = t_amb + dir * reach;
        const double fb = f(b);
        if (!std::isfinite(fb)) break;
        if ((fb > 0.0) != (fa > 0.0) || fb == 0.0) {
            bracketed = true;
            break;
        }
        a = b;
        fa = fb;
        if (reach >= 200.0) break;
    }
    if (!bracketed) {
        throw NumericalDivergence("no MT-loop equilibrium within 200 K of ambient (machine heat " +
                                  std::to_string(q0) + " W exceeds the outdoor coil capacity)");
    }
    for (int i = 0; i < 200 && std::abs(b - a) > 1e-10; ++i) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fm > 0.0) == (fa > 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    sol.x = 0.5 * (a + b);
    sol.q = q(sol.x);
    sol.t_coil_rl = t_amb + sol.q / k.g;
    return sol;
}

struct Evaluation {
    std::vector<double> d_htes;
    std::vector<double> d_ctes;
    double d_chp = 0.0;
    std::array<double, 4> d_energy{};
};

struct Recorder {
    std::vector<double>* out;
    void operator()(double v) const {
        if (out) out->push_back(v);
    }
    void circuit(const CircuitResult& c) const {
        (*this)(c.return_temp);
        (*this)(c.feed_temp);
        (*this)(c.mass_flow);
        (*this)(c.power);
    }
};

double saturating_draw(double (*draw)(const LoadParams&, double, double), const LoadParams& p, double power,
                       double t_tank) {
    try {
        return draw(p, power, t_tank);
    } catch (const InsufficientTankTemperature&) {
        return p.m_hvac;
    }
}

void tank_flux(const TankGeometry& g, const LayerGeometry& geom, const TankState& s, const TankBoundary& b,
               double& net, double& gross) {
    const TankOutlets out = outlet_temps(g, s);
    const double c = g.fluid.cp;
    const double source = b.m_source * c * (b.t_source_feed - out.source_return);
    const double load = b.m_load * c * (out.load_feed - b.t_load_return);
    const double loss = tank_loss(g, geom, s, b.t_amb);
    net = source - load - loss;
    gross = std::abs(source) + std::abs(load) + std::abs(loss);
}

Evaluation evaluate(const PlantSystem& sys, const Scenario& sc, const PlantState& st, double t,
                    std::vector<double>* values) {
    const PlantConfig& cfg = sys.config;
    const Recorder rec{values};
    const double t_amb = lookup_boundary(sc.t_amb, t);
    const double p_heat = lookup_boundary(sc.heating_load, t);
    const double p_cool = lookup_boundary(sc.cooling_load, t);

    TankBoundary hb;
    TankBoundary cb;
    hb.t_amb = cb.t_amb = t_amb;
    const TankOutlets h_out = outlet_temps(sys.htes, st.htes);
    const TankOutlets c_out = outlet_temps(sys.ctes, st.ctes);

    rec(t_amb);
    for (double v : sensor_temps(sys.htes, st.htes, kHtesSensors)) rec(v);
    for (double v : sensor_temps(sys.ctes, st.ctes, kCtesSensors)) rec(v);

    Evaluation ev;
    if (sys.has(Component::chp)) {
        const Switch s = switch_at(sys, sc, Component::chp, t);
        const ChpOutputs co = chp_outputs(*cfg.chp, st.chp, h_out.source_return, s);
        hb.m_source = co.ht.mass_flow;
        hb.t_source_feed = co.ht.feed_temp;
        ev.d_chp = chp_dPth_dt(*cfg.chp, st.chp, s);
        rec.circuit(co.ht);
        rec(co.p_el);
        rec(co.fuel_flow);
    }

    std::optional<LoopSolution> loop;
    OcConductance coil;
    Switch oc_switch = Switch::off;
    if (sys.has(Component::oc)) {
        oc_switch = switch_at(sys, sc, Component::oc, t);
        coil = oc_conductance(*cfg.oc, sc.v_oc, sc.v_set_oc, oc_switch);
    }

    if (sys.has(Component::adcm)) {
        const AdcmParams& p = *cfg.adcm;
        const Switch s = switch_at(sys, sc, Component::adcm, t);
        const double lt = c_out.source_return;
        const double ht = h_out.load_feed;
        loop = solve_mt_loop([&](double x) { return gate(s) * adcm_mt_power(p, lt, ht, x); }, t_amb, coil);
        const AdcmResult r = adcm_step(p, lt, ht, loop->x, s);
        hb.m_load = r.ht.mass_flow;
        hb.t_load_return = r.ht.feed_temp;
        cb.m_source = r.lt.mass_flow;
        cb.t_source_feed = r.lt.feed_temp;
        rec.circuit(r.lt);
        rec.circuit(r.ht);
        rec.circuit(r.mt);
        rec(r.cop);
        rec(r.p_el);
    }

    if (sys.has(Component::revhp)) {
        const RevHpParams& p = *cfg.revhp;
        const Switch s = switch_at(sys, sc, Component::revhp, t);
        RevHpResult r;
        if (sys.mode == Mode::wec) {
            const double ht = h_out.source_return;
            loop = solve_mt_loop([&](double x) { return -gate(s) * hp_step(p, ht, x, s).evaporator.power; }, t_amb,
                                 coil);
            r = hp_step(p, ht, loop->x, s);
            hb.m_source = r.condenser.mass_flow;
            hb.t_source_feed = r.condenser.feed_temp;
        } else {
            const double lt = c_out.source_return;
            loop = solve_mt_loop([&](double x) { return gate(s) * ccm_step(p, x, lt, s).condenser.power; }, t_amb,
                                 coil);
            r = ccm_step(p, loop->x, lt, s);
            cb.m_source = r.evaporator.mass_flow;
            cb.t_source_feed = r.evaporator.feed_temp;
        }
        rec.circuit(r.condenser);
        rec.circuit(r.evaporator);
        rec(r.cop);
        rec(r.p_el);
    }

    if (sys.has(Component::oc)) {
        const LoopSolution l = loop.value_or(LoopSolution{t_amb, 0.0, t_amb});
        const OcResult r = oc_step(*cfg.oc, l.t_coil_rl, t_amb, sc.v_oc, sc.v_set_oc, oc_switch);
        rec.circuit({l.t_coil_rl, l.x, sc.v_oc, r.m_dot, l.q});
        rec(r.p_el);
    }

    double m_heat = 0.0;
    double m_cool = 0.0;
    if (sys.mode != Mode::sep && p_heat > 0.0) {
        m_heat = saturating_draw(heating_load_draw, *cfg.loads, p_heat, h_out.load_feed);
        hb.m_load = m_heat;
        hb.t_load_return = heating_load_return(*cfg.loads, p_heat);
    }
    if (p_cool > 0.0) {
        m_cool = saturating_draw(cooling_load_draw, *cfg.loads, p_cool, c_out.load_feed);
        cb.m_load = m_cool;
        cb.t_load_return = cooling_load_return(*cfg.loads, p_cool);
    }
    rec(p_heat);
    rec(m_heat);
    rec(p_cool);
    rec(m_cool);

    ev.d_htes = tank_derivatives_smooth(sys.htes, sys.htes_layers, st.htes, hb, cfg.omega);
    ev.d_ctes = tank_derivatives_smooth(sys.ctes, sys.ctes_layers, st.ctes, cb, cfg.omega);
    tank_flux(sys.htes, sys.htes_layers, st.htes, hb, ev.d_energy[0], ev.d_energy[1]);
    tank_flux(sys.ctes, sys.ctes_layers, st.ctes, cb, ev.d_energy[2], ev.d_energy[3]);
    return ev;
}

PlantState advance(const PlantState& s, const Evaluation& e, double h) {
    PlantState out = s;
    for (std::size_t i = 0; i < out.htes.temps.size(); ++i) out.htes.temps[i] += h * e.d_htes[i];
    for (std::size_t i = 0; i < out.ctes.temps.size(); ++i) out.ctes.temps[i] += h * e.d_ctes[i];
    out.chp.p_th += h * e.d_chp;
    for (std::size_t i = 0; i < out.energy.size(); ++i) out.energy[i] += h * e.d_energy[i];
    return out;
}

void check_finite(const TankState& s, const char* tank) {
    for (std::size_t i = 0; i < s.temps.size(); ++i) {
        if (!std::isfinite(s.temps[i])) {
            const int layer = static_cast<int>(i) + 1;
            throw NumericalDivergence(std::string(tank) + " layer " + std::to_string(layer) + " became non-finite",
                                      layer);
        }
    }
}

std::vector<double> expand_profile(const std::vector<double>& init, int layers, const char* key) {
    if (init.size() == 1) return std::vector<double>(layers, init.front());
    if (static_cast<int>(init.size()) != layers) {
        throw ConfigError(std::string(key) + " has " + std::to_string(init.size()) + " values, tank has " +
                              std::to_string(layers) + " layers",
                          {key});
    }
    return init;
}

struct SensorRef {
    bool htes = true;
    int index = 0;  // 0-based
};

SensorRef parse_sensor(const std::string& id) {
    const auto parse = [&](const std::string& prefix, int count) -> std::optional<int> {
        if (id.rfind(prefix, 0) != 0) return std::nullopt;
        const std::string rest = id.substr(prefix.size());
        if (rest.empty() || !std::all_of(rest.begin(), rest.end(), ::isdigit)) return std::nullopt;
        const int k = std::stoi(rest);
        if (k < 1 || k > count) return std::nullopt;
        return k - 1;
    };
    if (auto k = parse("HTES_T_", kHtesSensors)) return {true, *k};
    if (auto k = parse("CTES_T_", kCtesSensors)) return {false, *k};
    throw ConfigError("set-point sensor '" + id + "' is not one of HTES_T_1..9, CTES_T_1..4", {"set_point.sensor"});
}

double sensor_value(const PlantSystem& sys, const PlantState& st, const SensorRef& ref) {
    if (ref.htes) return sensor_temps(sys.htes, st.htes, kHtesSensors)[ref.index];
    return sensor_temps(sys.ctes, st.ctes, kCtesSensors)[ref.index];
}

bool reached(double value, const SetPoint& sp) {
    return sp.direction == Crossing::falling ? value <= sp.threshold : value >= sp.threshold;
}

void apply_flow_overrides(PlantSystem& sys, const Scenario& sc) {
    for (const auto& [circ, v] : sc.flows) {
        if (!(v > 0.0)) throw ConfigError("flow override " + circ + " must be positive", {"flows." + circ});
        bool used = false;
        if (sys.has(Component::adcm)) {
            auto& p = *sys.config.adcm;
            if (circ == "HT") p.v_ht = v, used = true;
            if (circ == "MT") p.v_mt = v, used = true;
            if (circ == "LT") p.v_lt = v, used = true;
        }
        if (sys.has(Component::revhp)) {
            auto& p = *sys.config.revhp;
            if (circ == "HT") p.v_ht = v, used = true;
            if (circ == "MT") p.v_mt = v, used = true;
            if (circ == "LT") p.v_lt = v, used = true;
        }
        if (!used) throw ConfigError("flow override '" + circ + "' matches no circuit in this mode", {"flows." + circ});
    }
}

void validate_scenario(const PlantSystem& sys, const Scenario& sc) {
    if (!(sc.dt > 0.0)) throw ConfigError("dt must be positive", {"dt"});
    if (!(sc.horizon > 0.0)) throw ConfigError("horizon must be positive", {"horizon_s"});
    const double per_log = kLogInterval / sc.dt;
    if (std::abs(per_log - std::round(per_log)) > 1e-9) {
        throw ConfigError("dt must divide the 60 s log interval, got " + std::to_string(sc.dt), {"dt"});
    }
    const double dt_max = max_stable_dt(sys, sc);
    if (sc.dt > dt_max) {
        throw ConfigError("dt " + std::to_string(sc.dt) + " s exceeds the stability bound dt_max = " +
                              std::to_string(dt_max) + " s",
                          {"dt"});
    }
    for (const TimeSeries* s : {&sc.t_amb, &sc.heating_load, &sc.cooling_load}) s->validate();
    const auto any_positive = [](const TimeSeries& s) {
        return std::any_of(s.v.begin(), s.v.end(), [](double v) { return v > 0.0; });
    };
    const auto any_negative = [](const TimeSeries& s) {
        return std::any_of(s.v.begin(), s.v.end(), [](double v) { return v < 0.0; });
    };
    if (any_negative(sc.heating_load) || any_negative(sc.cooling_load)) {
        throw ConfigError("load series must be non-negative", {"heating_load", "cooling_load"});
    }
    if ((any_positive(sc.heating_load) || any_positive(sc.cooling_load)) && !sys.config.loads) {
        throw ConfigError("scenario has loads but the plant has no loads block", {"loads"});
    }
    if (sys.mode == Mode::sep && any_positive(sc.heating_load)) {
        throw ConfigError("SEP feeds the HTES tap to the AdCM and has no heating-load port", {"heating_load"});
    }
    if (sys.has(Component::oc)) fan_state(*sys.config.oc, sc.v_set_oc, Switch::on);
    if (!(sc.v_oc >= 0.0)) throw ConfigError("outdoor coil flow must be non-negative", {"oc.flow"});
    for (const auto& [comp, events] : sc.switches) {
        if (!sys.has(comp)) {
            throw ConfigError("switch schedule for " + to_string(comp) + ", which " + to_string(sys.mode) +
                                  " does not use",
                              {"switches." + to_string(comp)});
        }
        for (std::size_t i = 1; i < events.size(); ++i) {
            if (events[i].t < events[i - 1].t) {
                throw ConfigError("switch events must be time-ordered", {"switches." + to_string(comp)});
            }
        }
    }
    if (sc.set_point) parse_sensor(sc.set_point->sensor);
}

}  // namespace

PlantSystem assemble(Mode mode, const PlantConfig& config) {
    PlantSystem sys;
    sys.mode = mode;
    sys.config = config;
    sys.components = components_for(mode);

    std::vector<std::string> missing;
    for (Component c : sys.components) {
        const bool present = (c == Component::adcm && config.adcm) || (c == Component::chp && config.chp) ||
                             (c == Component::revhp && config.revhp) || (c == Component::oc && config.oc);
        if (!present) missing.push_back(to_string(c));
    }
    if (!config.htes) missing.push_back("htes");
    if (!config.ctes) missing.push_back("ctes");
    if (!missing.empty()) {
        std::string list;
        for (const auto& k : missing) list += (list.empty() ? "" : ", ") + k;
        throw ConfigError(to_string(mode) + " requires missing plant blocks: " + list, missing);
    }

    try {
        if (config.adcm) config.adcm->validate();
        if (config.chp) config.chp->validate();
        if (config.revhp) config.revhp->validate();
        if (config.oc) config.oc->validate();
        if (config.loads) config.loads->validate();
        if (!(config.omega > 0.0)) throw InvalidInput("omega must be positive");
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }

    sys.htes = *config.htes;
    sys.ctes = *config.ctes;
    sys.htes.orientation = TankOrientation::hot;
    sys.ctes.orientation = TankOrientation::cold;
    if (mode == Mode::sep) sys.htes.load_layer = config.adcm_tap_layer;
    try {
        sys.htes_layers = layer_geometry(sys.htes);
        sys.ctes_layers = layer_geometry(sys.ctes);
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what(), {"htes", "ctes"});
    }
    if (sys.htes.layers % kHtesSensors != 0) {
        throw ConfigError("HTES layer count must be a multiple of 9 sensors", {"htes.layers"});
    }
    if (sys.ctes.layers % kCtesSensors != 0) {
        throw ConfigError("CTES layer count must be a multiple of 4 sensors", {"ctes.layers"});
    }
    sys.wiring = wiring_for(mode, sys.htes, sys.ctes);
    sys.channels = channel_names(sys);
    return sys;
}

PlantState initial_state(const PlantSystem& sys, const Scenario& sc) {
    PlantState st;
    st.htes.temps = expand_profile(sc.htes_initial, sys.htes.layers, "htes_initial");
    st.ctes.temps = expand_profile(sc.ctes_initial, sys.ctes.layers, "ctes_initial");
    return st;
}

double max_stable_dt(const PlantSystem& sys, const Scenario& sc) {
    const PlantConfig& cfg = sys.config;
    const auto mass_flow = [](double v, const FluidProps& f) { return v * f.rho / 3600.0; };
    const auto flow_or = [&](const char* circ, double fallback) {
        const auto it = sc.flows.find(circ);
        return it == sc.flows.end() ? fallback : it->second;
    };
    double hot = 0.0;
    double cold = 0.0;
    if (sys.has(Component::chp)) hot = std::max(hot, mass_flow(cfg.chp->v_max, cfg.chp->water));
    if (sys.has(Component::adcm)) {
        hot = std::max(hot, mass_flow(flow_or("HT", cfg.adcm->v_ht), cfg.adcm->water));
        cold = std::max(cold, mass_flow(flow_or("LT", cfg.adcm->v_lt), cfg.adcm->water));
    }
    if (sys.has(Component::revhp)) {
        if (sys.mode == Mode::wec) hot = std::max(hot, mass_flow(flow_or("HT", cfg.revhp->v_ht), cfg.revhp->ht_fluid));
        if (sys.mode == Mode::sec) cold = std::max(cold, mass_flow(flow_or("LT", cfg.revhp->v_lt), cfg.revhp->lt_fluid));
    }
    if (cfg.loads) {
        hot = std::max(hot, cfg.loads->m_hvac);
        cold = std::max(cold, cfg.loads->m_hvac);
    }
    double dt_max = std::numeric_limits<double>::infinity();
    if (hot > 0.0) dt_max = std::min(dt_max, 0.5 * sys.htes_layers.mass / hot);
    if (cold > 0.0) dt_max = std::min(dt_max, 0.5 * sys.ctes_layers.mass / cold);
    return dt_max;
}

PlantState step(const PlantSystem& sys, const Scenario& sc, const PlantState& s, double t, double dt) {
    const Evaluation k1 = evaluate(sys, sc, s, t, nullptr);
    const Evaluation k2 = evaluate(sys, sc, advance(s, k1, dt / 2.0), t + dt / 2.0, nullptr);
    const Evaluation k3 = evaluate(sys, sc, advance(s, k2, dt / 2.0), t + dt / 2.0, nullptr);
    const Evaluation k4 = evaluate(sys, sc, advance(s, k3, dt), t + dt, nullptr);

    PlantState out = s;
    const auto blend = [dt](double a, double b, double c, double d) { return dt / 6.0 * (a + 2.0 * b + 2.0 * c + d); };
    for (std::size_t i = 0; i < out.htes.temps.size(); ++i) {
        out.htes.temps[i] += blend(k1.d_htes[i], k2.d_htes[i], k3.d_htes[i], k4.d_htes[i]);
    }
    for (std::size_t i = 0; i < out.ctes.temps.size(); ++i) {
        out.ctes.temps[i] += blend(k1.d_ctes[i], k2.d_ctes[i], k3.d_ctes[i], k4.d_ctes[i]);
    }
    out.chp.p_th += blend(k1.d_chp, k2.d_chp, k3.d_chp, k4.d_chp);
    for (std::size_t i = 0; i < out.energy.size(); ++i) {
        out.energy[i] += blend(k1.d_energy[i], k2.d_energy[i], k3.d_energy[i], k4.d_energy[i]);
    }
    check_finite(out.htes, "HTES");
    check_finite(out.ctes, "CTES");
    if (!std::isfinite(out.chp.p_th)) throw NumericalDivergence("CHP thermal state became non-finite");
    return out;
}

std::vector<double> outputs(const PlantSystem& sys, const Scenario& sc, const PlantState& state, double t) {
    std::vector<double> values;
    values.reserve(sys.channels.size());
    evaluate(sys, sc, state, t, &values);
    return values;
}

std::vector<double> SimLog::column(std::string_view name) const {
    const auto it = std::find(channels.begin(), channels.end(), name);
    if (it == channels.end()) throw InvalidInput("no channel '" + std::string(name) + "' in log");
    const std::size_t j = static_cast<std::size_t>(it - channels.begin());
    std::vector<double> col;
    col.reserve(rows.size());
    for (const auto& r : rows) col.push_back(r[j]);
    return col;
}

SimLog run(const PlantSystem& assembled, const Scenario& sc) {
    if (sc.mode != assembled.mode) {
        throw ConfigError("scenario mode " + to_string(sc.mode) + " does not match the assembled " +
                              to_string(assembled.mode) + " plant",
                          {"mode"});
    }
    PlantSystem sys = assembled;
    apply_flow_overrides(sys, sc);
    validate_scenario(sys, sc);

    SimLog log;
    log.channels.push_back("time_s");
    log.channels.insert(log.channels.end(), sys.channels.begin(), sys.channels.end());

    PlantState state = initial_state(sys, sc);
    const PlantState start = state;
    const auto record = [&](double t) {
        std::vector<double> row{t};
        const auto v = outputs(sys, sc, state, t);
        row.insert(row.end(), v.begin(), v.end());
        log.rows.push_back(std::move(row));
    };

    const std::optional<SensorRef> sensor =
        sc.set_point ? std::optional<SensorRef>(parse_sensor(sc.set_point->sensor)) : std::nullopt;
    const long per_log = std::lround(kLogInterval / sc.dt);
    const long n_steps = static_cast<long>(std::ceil(sc.horizon / sc.dt - 1e-9));

    double t = 0.0;
    log.reason = "horizon";
    try {
        record(0.0);
        double prev = sensor ? sensor_value(sys, state, *sensor) : 0.0;
        if (sensor && reached(prev, *sc.set_point)) {
            log.reason = "setpoint";
        } else {
            for (long k = 0; k < n_steps; ++k) {
                PlantState next = step(sys, sc, state, t, sc.dt);
                const double t_next = static_cast<double>(k + 1) * sc.dt;
                state = std::move(next);
                if ((k + 1) % per_log == 0) record(t_next);
                if (sensor) {
                    const double now = sensor_value(sys, state, *sensor);
                    if (reached(now, *sc.set_point)) {
                        const double frac = (prev - sc.set_point->threshold) / (prev - now);
                        log.end_time = t + sc.dt * std::clamp(frac, 0.0, 1.0);
                        log.reason = "setpoint";
                        t = t_next;
                        break;
                    }
                    prev = now;
                }
                t = t_next;
            }
        }
    } catch (const NumericalDivergence& e) {
        throw NumericalDivergence("at t = " + std::to_string(t) + " s: " + e.what(), e.layer());
    }
    if (log.reason == "horizon") log.end_time = t;

    const auto audit = [](double h0, double h1, double net, double gross) {
        TankAudit a{h1 - h0, net, gross, 0.0};
        a.rel_error = std::abs(a.delta_h - a.net_flux) / std::max(gross, 1.0);
        return a;
    };
    log.htes_audit = audit(tank_enthalpy(sys.htes, sys.htes_layers, start.htes),
                           tank_enthalpy(sys.htes, sys.htes_layers, state.htes), state.energy[0], state.energy[1]);
    log.ctes_audit = audit(tank_enthalpy(sys.ctes, sys.ctes_layers, start.ctes),
                           tank_enthalpy(sys.ctes, sys.ctes_layers, state.ctes), state.energy[2], state.energy[3]);
    return log;
}

SimLog run(const Scenario& sc, const PlantConfig& config) { return run(assemble(sc.mode, config), sc); }

}  // namespace greybox
