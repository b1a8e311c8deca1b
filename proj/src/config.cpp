#include "greybox/config.h"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "greybox/csv.h"
#include "greybox/errors.h"

namespace greybox {

using nlohmann::json;

namespace {

// Reads keys from one JSON object and reports the ones nobody asked for.
class Block {
public:
    Block(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(label() + " must be a JSON object", {label()});
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key);
    }

    const json& get(const std::string& key) {
        if (!has(key)) throw ConfigError("missing key " + key_path(key), {key_path(key)});
        return j_.at(key);
    }

    double num(const std::string& key, double fallback) { return has(key) ? num(key) : fallback; }

    double num(const std::string& key) {
        const json& v = get(key);
        if (!v.is_number()) throw ConfigError(key_path(key) + " must be a number", {key_path(key)});
        return v.get<double>();
    }

    int integer(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_number_integer()) throw ConfigError(key_path(key) + " must be an integer", {key_path(key)});
        return v.get<int>();
    }

    std::string str(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = j_.at(key);
        if (!v.is_string()) throw ConfigError(key_path(key) + " must be a string", {key_path(key)});
        return v.get<std::string>();
    }

    std::vector<double> numbers(const std::string& key) {
        const json& v = get(key);
        if (v.is_number()) return {v.get<double>()};
        if (!v.is_array()) throw ConfigError(key_path(key) + " must be a number or an array", {key_path(key)});
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError(key_path(key) + " must contain only numbers", {key_path(key)});
            out.push_back(e.get<double>());
        }
        return out;
    }

    PolyMap map(const std::string& key, int n_vars) {
        const auto c = numbers(key);
        if (c.size() != PolyMap::coeff_count(n_vars)) {
            throw ConfigError(key_path(key) + " needs " + std::to_string(PolyMap::coeff_count(n_vars)) +
                                  " coefficients, got " + std::to_string(c.size()),
                              {key_path(key)});
        }
        return PolyMap(n_vars, c);
    }

    Block child(const std::string& key) { return Block(get(key), key_path(key)); }

    void finish() const {
        std::vector<std::string> unknown;
        for (const auto& [k, _] : j_.items()) {
            if (!k.empty() && k.front() == '_') continue;
            if (!seen_.count(k)) unknown.push_back(key_path(k));
        }
        if (!unknown.empty()) {
            std::string list;
            for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
            throw ConfigError("unknown keys: " + list, unknown);
        }
    }

    std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    std::string label() const { return path_.empty() ? "document" : path_; }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

FluidProps fluid(Block& parent, const std::string& key, FluidProps fallback) {
    if (!parent.has(key)) return fallback;
    Block b = parent.child(key);
    FluidProps f{b.num("rho", fallback.rho), b.num("cp", fallback.cp)};
    b.finish();
    return f;
}

TankGeometry tank(Block b, const FluidProps& water) {
    TankGeometry g;
    g.diameter = b.num("diameter");
    g.height = b.num("height");
    g.wall = b.num("wall", g.wall);
    g.layers = b.integer("layers", g.layers);
    g.load_layer = b.integer("load_layer", g.load_layer);
    g.k = b.num("k", g.k);
    g.lambda_eff = b.num("lambda_eff", g.lambda_eff);
    g.fluid = water;
    b.finish();
    return g;
}

}  // namespace

PlantConfig parse_plant_config(std::string_view json_text) {
    const json doc = parse_json(json_text);
    Block root(doc, "");
    PlantConfig cfg;

    FluidProps water = kWater, brine = kBrine, air = kAir;
    if (root.has("fluids")) {
        Block f = root.child("fluids");
        water = fluid(f, "water", water);
        brine = fluid(f, "brine", brine);
        air = fluid(f, "air", air);
        f.finish();
    }
    cfg.omega = root.num("omega", cfg.omega);

    if (root.has("adcm")) {
        Block b = root.child("adcm");
        AdcmParams p;
        p.capacity_kw = b.map("capacity_kw", 3);
        p.cop = b.map("cop", 3);
        p.v_lt = b.num("v_lt", p.v_lt);
        p.v_mt = b.num("v_mt", p.v_mt);
        p.v_ht = b.num("v_ht", p.v_ht);
        p.p_el_nom = b.num("p_el_nom", p.p_el_nom);
        p.cop_floor = b.num("cop_floor", p.cop_floor);
        p.water = water;
        cfg.adcm_tap_layer = b.integer("tap_layer", cfg.adcm_tap_layer);
        b.finish();
        cfg.adcm = p;
    }
    if (root.has("chp")) {
        Block b = root.child("chp");
        ChpParams p;
        p.flow_map = b.map("flow_map", 1);
        p.time_constant = b.num("time_constant", p.time_constant);
        p.p_el_nom = b.num("p_el_nom", p.p_el_nom);
        p.p_th_nom = b.num("p_th_nom", p.p_th_nom);
        p.eta_el = b.num("eta_el", p.eta_el);
        p.eta_th = b.num("eta_th", p.eta_th);
        p.hcv = b.num("hcv", p.hcv);
        p.v_min = b.num("v_min", p.v_min);
        p.v_max = b.num("v_max", p.v_max);
        p.water = water;
        b.finish();
        cfg.chp = p;
    }
    if (root.has("revhp")) {
        Block b = root.child("revhp");
        RevHpParams p;
        p.heating_kw = b.map("heating_kw", 2);
        p.cooling_kw = b.map("cooling_kw", 2);
        p.power_kw = b.map("power_kw", 2);
        p.v_ht = b.num("v_ht", p.v_ht);
        p.v_mt = b.num("v_mt", p.v_mt);
        p.v_lt = b.num("v_lt", p.v_lt);
        p.ht_fluid = water;
        p.mt_fluid = brine;
        p.lt_fluid = water;
        b.finish();
        cfg.revhp = p;
    }
    if (root.has("outdoor_coil")) {
        Block b = root.child("outdoor_coil");
        OcParams p;
        p.area = b.num("area", p.area);
        const double u = b.num("u", 25.0);
        p.ua = b.num("ua", u * p.area);
        p.rpm_max = b.num("rpm_max", p.rpm_max);
        p.p_el_max = b.num("p_el_max", p.p_el_max);
        p.v_max = b.num("v_max", p.v_max);
        p.m_air_max = b.num("m_air_max", p.m_air_max);
        p.brine = brine;
        p.air = air;
        b.finish();
        cfg.oc = p;
    }
    if (root.has("htes")) cfg.htes = tank(root.child("htes"), water);
    if (root.has("ctes")) cfg.ctes = tank(root.child("ctes"), water);
    if (root.has("loads")) {
        Block b = root.child("loads");
        LoadParams p;
        p.t_fl_hvac_heating = b.num("t_fl_hvac_heating", p.t_fl_hvac_heating);
        p.t_fl_hvac_cooling = b.num("t_fl_hvac_cooling", p.t_fl_hvac_cooling);
        p.m_hvac = b.num("m_hvac", p.m_hvac);
        const std::string rule = b.str("return_rule", "hvac_feed");
        if (rule == "hvac_feed") {
            p.return_rule = LoadReturnRule::hvac_feed;
        } else if (rule == "mixing") {
            p.return_rule = LoadReturnRule::mixing;
        } else {
            throw ConfigError("loads.return_rule must be hvac_feed or mixing", {"loads.return_rule"});
        }
        p.water = water;
        b.finish();
        cfg.loads = p;
    }
    root.finish();
    return cfg;
}

PlantConfig load_plant_config(const std::filesystem::path& path) { return parse_plant_config(read_file(path)); }

namespace {

TimeSeries boundary(Block& parent, const std::string& key, double fallback, const std::filesystem::path& base) {
    if (!parent.has(key)) return TimeSeries::constant(fallback);
    const json& v = parent.get(key);
    const std::string where = parent.key_path(key);
    if (v.is_number()) return TimeSeries::constant(v.get<double>());
    Block b(v, where);
    TimeSeries s;
    if (b.has("file")) {
        const std::string file = b.str("file", "");
        const std::string column = b.str("column", "");
        const auto path = std::filesystem::path(file).is_absolute() ? std::filesystem::path(file) : base / file;
        try {
            const CsvTable table = read_csv(path);
            s.t = table.column("time_s");
            s.v = table.column(column);
        } catch (const InvalidInput& e) {
            throw ConfigError(where + ": " + e.what(), {where});
        }
    } else {
        s.t = b.numbers("t");
        s.v = b.numbers("v");
    }
    b.finish();
    try {
        s.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what(), {where});
    }
    return s;
}

Component component_from_key(const std::string& key) {
    if (key == "adcm") return Component::adcm;
    if (key == "chp") return Component::chp;
    if (key == "revhp") return Component::revhp;
    if (key == "outdoor_coil") return Component::oc;
    throw ConfigError("unknown component in switches: " + key, {"switches." + key});
}

}  // namespace

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
    const json doc = parse_json(json_text);
    Block root(doc, "");
    Scenario sc;
    sc.mode = mode_from_string(root.str("mode", ""));
    sc.name = root.str("name", to_string(sc.mode));
    sc.htes_initial = root.numbers("htes_initial");
    sc.ctes_initial = root.numbers("ctes_initial");
    sc.t_amb = boundary(root, "ambient", 20.0, base_dir);
    sc.heating_load = boundary(root, "heating_load", 0.0, base_dir);
    sc.cooling_load = boundary(root, "cooling_load", 0.0, base_dir);

    if (root.has("flows")) {
        Block f = root.child("flows");
        for (const char* circ : {"HT", "MT", "LT"}) {
            if (f.has(circ)) sc.flows[circ] = f.num(circ);
        }
        f.finish();
    }
    if (root.has("outdoor_coil")) {
        Block oc = root.child("outdoor_coil");
        sc.v_oc = oc.num("flow", sc.v_oc);
        sc.v_set_oc = oc.num("v_set", sc.v_set_oc);
        oc.finish();
    }
    if (root.has("switches")) {
        const json& sw = root.get("switches");
        if (!sw.is_object()) throw ConfigError("switches must be an object", {"switches"});
        for (const auto& [key, events] : sw.items()) {
            if (!key.empty() && key.front() == '_') continue;
            const Component c = component_from_key(key);
            std::vector<SwitchEvent> list;
            for (const auto& e : events) {
                if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number_integer()) {
                    throw ConfigError("switch events are [time_s, 0|1] pairs", {"switches." + key});
                }
                try {
                    list.push_back({e[0].get<double>(), switch_from_int(e[1].get<int>())});
                } catch (const InvalidInput& err) {
                    throw ConfigError(err.what(), {"switches." + key});
                }
            }
            sc.switches[c] = std::move(list);
        }
    }
    if (root.has("set_point")) {
        Block b = root.child("set_point");
        SetPoint sp;
        sp.sensor = b.str("sensor", "");
        sp.threshold = b.num("threshold");
        const std::string dir = b.str("direction", "falling");
        if (dir == "falling") {
            sp.direction = Crossing::falling;
        } else if (dir == "rising") {
            sp.direction = Crossing::rising;
        } else {
            throw ConfigError("set_point.direction must be rising or falling", {"set_point.direction"});
        }
        b.finish();
        sc.set_point = sp;
    }
    sc.dt = root.num("dt", sc.dt);
    sc.horizon = root.num("horizon_s", sc.horizon);
    root.finish();
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    return parse_scenario(read_file(path), path.parent_path());
}

}  // namespace greybox
