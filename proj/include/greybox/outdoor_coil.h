#pragma once

// Dry cooling tower: fan affinity laws plus the NTU-effectiveness method.

#include "greybox/fluid.h"

namespace greybox {

struct OcParams {
    double ua = 25.0 * 521.8;  // W/K
    double area = 521.8;       // m2
    double rpm_max = 480.0;
    double p_el_max = 900.0;  // W
    double v_max = 10.0;      // V
    double m_air_max = 8.0;   // kg/s
    FluidProps brine = kBrine;
    FluidProps air = kAir;

    void validate() const;
};

struct FanState {
    double rpm = 0.0;
    double m_air = 0.0;  // kg/s
    double p_el = 0.0;   // W
};

// Throws InvalidInput when v_set lies outside [0, v_max].
FanState fan_state(const OcParams& p, double v_set, Switch s);

// Effectiveness of the printed counter-flow relation for 0 < c_min <= c_max.
double ntu_effectiveness(double c_min, double c_max, double ua);

struct OcResult {
    double p_th = 0.0;       // W removed from the brine
    double t_fl = 0.0;       // degC brine leaving the coil
    double t_air_out = 0.0;  // degC
    double p_el = 0.0;       // W
    double m_dot = 0.0;      // kg/s brine
};

OcResult oc_step(const OcParams& p, double t_rl, double t_amb, double v_oc, double v_set, Switch s);

// Heat-transfer conductance eps * C_min (W/K) and brine capacity rate C_h
// (W/K) at the given operating point. Both are zero when no air moves.
struct OcConductance {
    double g = 0.0;
    double c_hot = 0.0;
};

OcConductance oc_conductance(const OcParams& p, double v_oc, double v_set, Switch s);

}  // namespace greybox
