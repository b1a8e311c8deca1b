#include "greybox/outdoor_coil.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "greybox/errors.h"

namespace greybox {

void OcParams::validate() const {
    for (double v : {ua, area, rpm_max, p_el_max, v_max, m_air_max}) {
        if (!(v > 0.0)) throw InvalidInput("outdoor coil parameters must be positive");
    }
    brine.validate();
    air.validate();
}

FanState fan_state(const OcParams& p, double v_set, Switch s) {
    if (!(v_set >= 0.0 && v_set <= p.v_max)) {
        throw InvalidInput("fan set voltage " + std::to_string(v_set) + " outside [0, " + std::to_string(p.v_max) +
                           "]");
    }
    FanState f;
    f.rpm = p.rpm_max * v_set / p.v_max;
    f.m_air = f.rpm * p.m_air_max / p.rpm_max;
    const double ratio = f.rpm / p.rpm_max;
    f.p_el = gate(s) * ratio * ratio * ratio * p.p_el_max;
    return f;
}

double ntu_effectiveness(double c_min, double c_max, double ua) {
    if (!(c_min > 0.0)) throw InvalidInput("C_min must be positive");
    if (c_max < c_min) throw InvalidInput("C_max must not be below C_min");
    if (ua < 0.0) throw InvalidInput("UA must be non-negative");
    const double ntu = ua / c_min;
    const double cr = c_min / c_max;
    if (cr == 0.0) return -std::expm1(-ntu);
    if (std::abs(1.0 - cr) < 1e-9) return ntu / (1.0 + ntu);
    const double x = std::exp(-ntu * (1.0 - cr));
    return (1.0 - x) / (1.0 - cr * x);
}

OcConductance oc_conductance(const OcParams& p, double v_oc, double v_set, Switch s) {
    const FanState fan = fan_state(p, v_set, s);
    OcConductance out;
    out.c_hot = circuit_mass_flow(s, v_oc, p.brine) * p.brine.cp;
    const double c_cold = gate(s) * fan.m_air * p.air.cp;
    if (out.c_hot <= 0.0 || c_cold <= 0.0) return out;
    const double c_min = std::min(out.c_hot, c_cold);
    out.g = ntu_effectiveness(c_min, std::max(out.c_hot, c_cold), p.ua) * c_min;
    return out;
}

OcResult oc_step(const OcParams& p, double t_rl, double t_amb, double v_oc, double v_set, Switch s) {
    const FanState fan = fan_state(p, v_set, s);
    OcResult r;
    r.p_el = fan.p_el;
    r.m_dot = circuit_mass_flow(s, v_oc, p.brine);
    r.t_fl = t_rl;
    r.t_air_out = t_amb;

    const double c_hot = r.m_dot * p.brine.cp;
    const double c_cold = gate(s) * fan.m_air * p.air.cp;
    if (c_hot <= 0.0 || c_cold <= 0.0) return r;

    const double c_min = std::min(c_hot, c_cold);
    const double eps = ntu_effectiveness(c_min, std::max(c_hot, c_cold), p.ua);
    r.p_th = eps * c_min * (t_rl - t_amb);
    r.t_fl = t_rl - r.p_th / c_hot;
    r.t_air_out = t_amb + r.p_th / c_cold;
    return r;
}

}  // namespace greybox
