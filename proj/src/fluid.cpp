#include "greybox/fluid.h"

#include <cmath>
#include <string>

#include "greybox/errors.h"

namespace greybox {

void FluidProps::validate() const {
    if (!(rho > 0.0) || !(cp > 0.0)) {
        throw InvalidInput("fluid properties must be positive (rho=" + std::to_string(rho) +
                           ", cp=" + std::to_string(cp) + ")");
    }
}

Switch switch_from_int(int value) {
    if (value == 0) return Switch::off;
    if (value == 1) return Switch::on;
    throw InvalidInput("switch value must be 0 or 1, got " + std::to_string(value));
}

double circuit_mass_flow(Switch s, double volume_flow, const FluidProps& fluid) {
    if (!(volume_flow >= 0.0)) {
        throw InvalidInput("volume flow must be non-negative, got " + std::to_string(volume_flow));
    }
    return gate(s) * volume_flow * fluid.rho / 3600.0;
}

double temp_after_heat(double return_temp, double power, double volume_flow, const FluidProps& fluid,
                       HeatDirection direction) {
    if (!(volume_flow > 0.0)) {
        throw InvalidInput("volume flow must be positive, got " + std::to_string(volume_flow));
    }
    const double capacity_rate = fluid.rho / 3600.0 * volume_flow * fluid.cp;
    return return_temp + static_cast<int>(direction) * power / capacity_rate;
}

}  // namespace greybox
