#include "greybox/loads.h"

#include <string>

#include "greybox/errors.h"

namespace greybox {

void LoadParams::validate() const {
    if (!(m_hvac > 0.0)) throw InvalidInput("m_hvac must be positive");
    water.validate();
}

namespace {

double draw(const LoadParams& p, double p_load, double delta_t, const char* tank) {
    if (!(p_load >= 0.0)) throw InvalidInput("load power must be non-negative");
    if (p_load == 0.0) return 0.0;
    if (!(delta_t > 0.0)) {
        throw InsufficientTankTemperature(std::string(tank) + " feed is " + std::to_string(delta_t) +
                                          " K from the HVAC set temperature");
    }
    return p_load * p.m_hvac / (p.m_hvac * p.water.cp * delta_t + p_load);
}

}  // namespace

double heating_load_draw(const LoadParams& p, double p_load, double t_tank) {
    return draw(p, p_load, t_tank - p.t_fl_hvac_heating, "hot tank");
}

double cooling_load_draw(const LoadParams& p, double p_load, double t_tank) {
    return draw(p, p_load, p.t_fl_hvac_cooling - t_tank, "cold tank");
}

double heating_load_return(const LoadParams& p, double p_load) {
    if (p.return_rule == LoadReturnRule::hvac_feed) return p.t_fl_hvac_heating;
    return p.t_fl_hvac_heating - p_load / (p.m_hvac * p.water.cp);
}

double cooling_load_return(const LoadParams& p, double p_load) {
    if (p.return_rule == LoadReturnRule::hvac_feed) return p.t_fl_hvac_cooling;
    return p.t_fl_hvac_cooling + p_load / (p.m_hvac * p.water.cp);
}

}  // namespace greybox
