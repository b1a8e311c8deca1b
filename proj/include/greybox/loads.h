#pragma once

// Heating and cooling loads served from the tanks through an ideal mixing
// valve that holds the HVAC circuit at a fixed feed temperature and flow.

#include "greybox/fluid.h"

namespace greybox {

enum class LoadReturnRule {
    hvac_feed,  // tank-side return equals the HVAC feed set temperature
    mixing,     // return reconstructed from the HVAC circuit balance
};

struct LoadParams {
    double t_fl_hvac_heating = 35.0;  // degC
    double t_fl_hvac_cooling = 18.0;  // degC
    double m_hvac = 0.3;              // kg/s
    LoadReturnRule return_rule = LoadReturnRule::hvac_feed;
    FluidProps water = kWater;

    void validate() const;
};

// Mass flow drawn from the hot tank at feed temperature t_tank to cover
// p_load (W). Throws InsufficientTankTemperature if t_tank <= HVAC feed.
double heating_load_draw(const LoadParams& p, double p_load, double t_tank);

// Mirror image for the cold tank.
double cooling_load_draw(const LoadParams& p, double p_load, double t_tank);

// Temperature of the water returned to the tank by the load circuit.
double heating_load_return(const LoadParams& p, double p_load);
double cooling_load_return(const LoadParams& p, double p_load);

}  // namespace greybox
