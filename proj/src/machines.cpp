#include "greybox/machines.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "greybox/errors.h"

namespace greybox {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw InvalidInput(std::string(name) + " must be positive, got " + std::to_string(v));
}

void require_arity(const PolyMap& m, int n, const char* name) {
    if (m.n_vars() != n) {
        throw InvalidInput(std::string(name) + " must be a " + std::to_string(n) + "-variable map");
    }
}

void require_finite(std::initializer_list<double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw InvalidInput("machine input temperature is not finite");
    }
}

CircuitResult circuit(Switch s, double t_rl, double power, double v, const FluidProps& fluid, HeatDirection dir) {
    return {t_rl, temp_after_heat(t_rl, power, v, fluid, dir), v, circuit_mass_flow(s, v, fluid), power};
}

}  // namespace

void AdcmParams::validate() const {
    require_arity(capacity_kw, 3, "adcm capacity map");
    require_arity(cop, 3, "adcm cop map");
    require_positive(v_lt, "adcm v_lt");
    require_positive(v_mt, "adcm v_mt");
    require_positive(v_ht, "adcm v_ht");
    require_positive(cop_floor, "adcm cop_floor");
    if (p_el_nom < 0.0) throw InvalidInput("adcm p_el_nom must be non-negative");
    water.validate();
}

double adcm_mt_power(const AdcmParams& p, double t_rl_lt, double t_rl_ht, double t_rl_mt) {
    const double p_lt = std::max(0.0, p.capacity_kw(t_rl_lt, t_rl_ht, t_rl_mt)) * 1000.0;
    const double cop = std::max(p.cop_floor, p.cop(t_rl_lt, t_rl_ht, t_rl_mt));
    return p_lt / cop + p_lt;
}

AdcmResult adcm_step(const AdcmParams& p, double t_rl_lt, double t_rl_ht, double t_rl_mt, Switch s) {
    require_finite({t_rl_lt, t_rl_ht, t_rl_mt});
    const double p_lt = std::max(0.0, p.capacity_kw(t_rl_lt, t_rl_ht, t_rl_mt)) * 1000.0;
    const double cop = std::max(p.cop_floor, p.cop(t_rl_lt, t_rl_ht, t_rl_mt));
    const double p_ht = p_lt / cop;
    const double p_mt = p_ht + p_lt;

    AdcmResult r;
    r.lt = circuit(s, t_rl_lt, p_lt, p.v_lt, p.water, HeatDirection::cooling);
    r.ht = circuit(s, t_rl_ht, p_ht, p.v_ht, p.water, HeatDirection::cooling);
    r.mt = circuit(s, t_rl_mt, p_mt, p.v_mt, p.water, HeatDirection::heating);
    r.cop = cop;
    r.p_el = gate(s) * p.p_el_nom;
    return r;
}

void ChpParams::validate() const {
    require_arity(flow_map, 1, "chp flow map");
    require_positive(time_constant, "chp time_constant");
    require_positive(hcv, "chp hcv");
    require_positive(v_min, "chp v_min");
    if (v_max < v_min) throw InvalidInput("chp v_max must not be below v_min");
    const double eta = eta_el + eta_th;
    if (!(eta > 0.0 && eta <= 1.0)) throw InvalidInput("chp efficiencies must sum into (0, 1]");
    if (p_el_nom < 0.0 || p_th_nom < 0.0) throw InvalidInput("chp nominal powers must be non-negative");
    water.validate();
}

double chp_dPth_dt(const ChpParams& p, const ChpState& s, Switch sw) {
    return (p.p_th_nom * gate(sw) - s.p_th) / p.time_constant;
}

ChpOutputs chp_outputs(const ChpParams& p, const ChpState& s, double t_rl, Switch sw) {
    require_finite({t_rl});
    const double v = std::clamp(p.flow_map(t_rl), p.v_min, p.v_max);
    ChpOutputs out;
    out.ht = circuit(sw, t_rl, s.p_th, v, p.water, HeatDirection::heating);
    out.p_el = gate(sw) * p.p_el_nom;
    out.fuel_flow = gate(sw) * (p.p_el_nom + p.p_th_nom) / (p.hcv * (p.eta_el + p.eta_th));
    return out;
}

void RevHpParams::validate() const {
    require_arity(heating_kw, 2, "revhp heating map");
    require_arity(cooling_kw, 2, "revhp cooling map");
    require_arity(power_kw, 2, "revhp power map");
    require_positive(v_ht, "revhp v_ht");
    require_positive(v_mt, "revhp v_mt");
    require_positive(v_lt, "revhp v_lt");
    ht_fluid.validate();
    mt_fluid.validate();
    lt_fluid.validate();
}

RevHpResult hp_step(const RevHpParams& p, double t_rl_ht, double t_rl_mt, Switch s) {
    require_finite({t_rl_ht, t_rl_mt});
    const double p_ht = p.heating_kw(t_rl_ht, t_rl_mt) * 1000.0;
    const double p_el = gate(s) * p.power_kw(t_rl_mt, t_rl_ht) * 1000.0;
    const double p_mt = p_ht - p_el;

    RevHpResult r;
    r.condenser = circuit(s, t_rl_ht, p_ht, p.v_ht, p.ht_fluid, HeatDirection::heating);
    r.evaporator = circuit(s, t_rl_mt, p_mt, p.v_mt, p.mt_fluid, HeatDirection::cooling);
    r.p_el = p_el;
    r.cop = p_el != 0.0 ? p_ht / p_el : 0.0;
    return r;
}

RevHpResult ccm_step(const RevHpParams& p, double t_rl_mt, double t_rl_lt, Switch s) {
    require_finite({t_rl_mt, t_rl_lt});
    const double p_lt = p.cooling_kw(t_rl_mt, t_rl_lt) * 1000.0;
    const double p_el = gate(s) * p.power_kw(t_rl_lt, t_rl_mt) * 1000.0;
    const double p_mt = p_lt + p_el;

    RevHpResult r;
    r.condenser = circuit(s, t_rl_mt, p_mt, p.v_mt, p.mt_fluid, HeatDirection::heating);
    r.evaporator = circuit(s, t_rl_lt, p_lt, p.v_lt, p.lt_fluid, HeatDirection::cooling);
    r.p_el = p_el;
    r.cop = p_el != 0.0 ? p_lt / p_el : 0.0;
    return r;
}

}  // namespace greybox
