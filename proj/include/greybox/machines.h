#pragma once

// Grey-box machine models: adsorption chiller, CHP with first-order thermal
// lag, and the reversible heat pump in heating (HP) and chiller (CCM) modes.
// Capacity maps are stored in kW; every returned power is in W.

#include "greybox/fluid.h"
#include "greybox/regression.h"

namespace greybox {

struct AdcmParams {
    PolyMap capacity_kw;  // 3-var map of (LT, HT, MT) return temperatures
    PolyMap cop;          // 3-var map, same arguments
    double v_lt = 1.7;    // m3/h
    double v_mt = 4.2;
    double v_ht = 1.3;
    double p_el_nom = 400.0;  // W
    double cop_floor = 0.05;
    FluidProps water = kWater;

    void validate() const;
};

struct AdcmResult {
    CircuitResult lt, ht, mt;
    double cop = 0.0;
    double p_el = 0.0;  // W
};

AdcmResult adcm_step(const AdcmParams& p, double t_rl_lt, double t_rl_ht, double t_rl_mt, Switch s);

// Heat rejected into the MT circuit as a function of the MT return only.
// Used to close the MT loop with the outdoor coil.
double adcm_mt_power(const AdcmParams& p, double t_rl_lt, double t_rl_ht, double t_rl_mt);

struct ChpParams {
    PolyMap flow_map;              // 1-var map: return temperature -> m3/h
    double time_constant = 560.78;  // s
    double p_el_nom = 5000.0;      // W
    double p_th_nom = 10200.0;     // W
    double eta_el = 0.24;
    double eta_th = 0.65;
    double hcv = 12000.0;  // Wh/m3
    double v_min = 0.3;    // m3/h
    double v_max = 1.3;
    FluidProps water = kWater;

    void validate() const;
};

struct ChpState {
    double p_th = 0.0;  // W
};

struct ChpOutputs {
    CircuitResult ht;
    double p_el = 0.0;       // W
    double fuel_flow = 0.0;  // m3/h
};

// First-order approach of the thermal output toward switch * P_th_nom.
double chp_dPth_dt(const ChpParams& p, const ChpState& s, Switch sw);

ChpOutputs chp_outputs(const ChpParams& p, const ChpState& s, double t_rl, Switch sw);

struct RevHpParams {
    PolyMap heating_kw;  // g: (HT, MT) returns
    PolyMap cooling_kw;  // h: (MT, LT) returns
    PolyMap power_kw;    // i: (evaporator, condenser) returns
    double v_ht = 1.0;   // m3/h
    double v_mt = 2.4;
    double v_lt = 2.45;
    FluidProps ht_fluid = kWater;
    FluidProps mt_fluid = kBrine;
    FluidProps lt_fluid = kWater;

    void validate() const;
};

struct RevHpResult {
    CircuitResult condenser;   // HT in HP mode, MT in CCM mode
    CircuitResult evaporator;  // MT in HP mode, LT in CCM mode
    double p_el = 0.0;         // W
    double cop = 0.0;          // 0 while switched off
};

RevHpResult hp_step(const RevHpParams& p, double t_rl_ht, double t_rl_mt, Switch s);
RevHpResult ccm_step(const RevHpParams& p, double t_rl_mt, double t_rl_lt, Switch s);

}  // namespace greybox
