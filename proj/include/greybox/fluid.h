#pragma once

// Shared physical types for every component model.
//
// Unit contract used across the library:
//   temperatures  degC (models only use differences, so no Kelvin offset)
//   volume flow   m3/h
//   mass flow     kg/s
//   power         W (regression maps store kW and convert at the boundary)

namespace greybox {

struct FluidProps {
    double rho;  // kg/m3
    double cp;   // J/(kg K)

    // Throws InvalidInput unless rho > 0 and cp > 0.
    void validate() const;
};

inline constexpr FluidProps kWater{1000.0, 4186.0};
inline constexpr FluidProps kBrine{1040.0, 3600.0};  // 34 % glycol
inline constexpr FluidProps kAir{1.2, 1006.0};

// Binary operation status of a machine; never relaxed during simulation.
enum class Switch { off = 0, on = 1 };

inline constexpr double gate(Switch s) { return s == Switch::on ? 1.0 : 0.0; }

// Throws InvalidInput for anything other than 0 or 1.
Switch switch_from_int(int value);

enum class HeatDirection { heating = 1, cooling = -1 };

struct CircuitResult {
    double return_temp = 0.0;  // degC, entering the component
    double feed_temp = 0.0;    // degC, leaving the component
    double volume_flow = 0.0;  // m3/h
    double mass_flow = 0.0;    // kg/s, zero whenever the owner is switched off
    double power = 0.0;        // W
};

// Switch-gated circuit mass flow: s * v * rho / 3600.
double circuit_mass_flow(Switch s, double volume_flow, const FluidProps& fluid);

// First-law feed temperature of a circuit that gains (heating) or loses
// (cooling) `power` at a nominal volume flow. Divides by the volume flow, not
// the gated mass flow, so it stays finite while the machine is off.
double temp_after_heat(double return_temp, double power, double volume_flow, const FluidProps& fluid,
                       HeatDirection direction);

}  // namespace greybox
