#pragma once

// One-dimensional stratified storage tank. Layer 1 is the bottom, layer N the
// top. Inter-layer advection is tracked per face: face j sits between layers
// j and j+1 and its flow is positive when water moves downward.
//
// Hot tank: the source feed enters the top and its return leaves the bottom;
// the load is fed from `load_layer` and returns to the bottom.
// Cold tank: the source feed enters the bottom and its return leaves the top;
// the load is fed from `load_layer` and returns to the top.

#include <span>
#include <vector>

#include "greybox/fluid.h"

namespace greybox {

enum class TankOrientation { hot, cold };

struct TankGeometry {
    double diameter = 1.0;  // m
    double height = 1.8;    // m
    double wall = 0.005;    // m
    int layers = 90;
    int load_layer = 60;          // 1-based
    double k = 0.002;             // W/(m2 K)
    double lambda_eff = 0.0015;   // W/(m K)
    TankOrientation orientation = TankOrientation::hot;
    FluidProps fluid = kWater;

    void validate() const;
};

struct LayerGeometry {
    double z = 0.0;      // m
    double a_ext = 0.0;  // m2
    double a = 0.0;      // m2
    double mass = 0.0;   // kg
};

LayerGeometry layer_geometry(const TankGeometry& g);

struct TankState {
    std::vector<double> temps;  // degC, bottom to top
};

struct TankBoundary {
    double m_source = 0.0;        // kg/s
    double t_source_feed = 0.0;   // degC
    double m_load = 0.0;          // kg/s
    double t_load_return = 0.0;   // degC
    double t_amb = 20.0;          // degC
};

inline constexpr double kDefaultOmega = 2e-4;  // kg2/s2

// N-1 face flows implied by the source and load connections.
std::vector<double> interlayer_flows(const TankGeometry& g, const TankBoundary& b);

// Layer derivatives with the differentiable upwind blend
// sqrt(F^2 + omega) in place of |F|.
std::vector<double> tank_derivatives_smooth(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                            const TankBoundary& b, double omega = kDefaultOmega);

// Same, with face flows supplied directly instead of derived from `b`.
// Source and load inflow terms are still taken from `b`.
std::vector<double> tank_derivatives_smooth(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                            const TankBoundary& b, std::span<const double> faces, double omega);

// Exact upwind balance with explicit branches.
std::vector<double> tank_derivatives_reference(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                               const TankBoundary& b);
std::vector<double> tank_derivatives_reference(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                               const TankBoundary& b, std::span<const double> faces);

struct TankOutlets {
    double source_return = 0.0;  // degC
    double load_feed = 0.0;      // degC
};

TankOutlets outlet_temps(const TankGeometry& g, const TankState& s);

// Block means of N / n_sensors layers, bottom sensor first.
std::vector<double> sensor_temps(const TankGeometry& g, const TankState& s, int n_sensors);

// Sensible enthalpy relative to 0 degC, J.
double tank_enthalpy(const TankGeometry& g, const LayerGeometry& geom, const TankState& s);

// Heat lost through the shell, W (positive when the tank is above ambient).
double tank_loss(const TankGeometry& g, const LayerGeometry& geom, const TankState& s, double t_amb);

}  // namespace greybox
