#include "greybox/storage.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "greybox/errors.h"

namespace greybox {

void TankGeometry::validate() const {
    if (layers < 2) throw InvalidInput("tank needs at least 2 layers, got " + std::to_string(layers));
    if (load_layer < 1 || load_layer > layers) {
        throw InvalidInput("load_layer " + std::to_string(load_layer) + " outside 1.." + std::to_string(layers));
    }
    if (!(diameter > 0.0) || !(height > 0.0)) throw InvalidInput("tank diameter and height must be positive");
    if (wall < 0.0 || !(diameter > 2.0 * wall)) throw InvalidInput("tank wall must satisfy 0 <= Th < D/2");
    if (k < 0.0 || lambda_eff < 0.0) throw InvalidInput("tank k and lambda_eff must be non-negative");
    fluid.validate();
}

LayerGeometry layer_geometry(const TankGeometry& g) {
    g.validate();
    LayerGeometry l;
    l.z = g.height / g.layers;
    l.a_ext = std::numbers::pi * g.diameter * l.z;
    const double inner = g.diameter - 2.0 * g.wall;
    l.a = std::numbers::pi * inner * inner / 4.0;
    l.mass = l.a * l.z * g.fluid.rho;
    return l;
}

std::vector<double> interlayer_flows(const TankGeometry& g, const TankBoundary& b) {
    std::vector<double> f(g.layers - 1);
    const bool hot = g.orientation == TankOrientation::hot;
    for (int j = 1; j < g.layers; ++j) {
        const bool above_tap = j >= g.load_layer;
        if (hot) {
            f[j - 1] = above_tap ? b.m_source : b.m_source - b.m_load;
        } else {
            f[j - 1] = above_tap ? b.m_load - b.m_source : -b.m_source;
        }
    }
    return f;
}

namespace {

void check_state(const TankGeometry& g, const TankState& s) {
    if (static_cast<int>(s.temps.size()) != g.layers) {
        throw InvalidInput("tank state has " + std::to_string(s.temps.size()) + " layers, geometry expects " +
                           std::to_string(g.layers));
    }
}

// Source, load and shell terms in W per layer.
std::vector<double> port_and_loss_terms(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                        const TankBoundary& b) {
    const int n = g.layers;
    const double c = g.fluid.cp;
    const auto& t = s.temps;
    std::vector<double> q(n);
    for (int i = 0; i < n; ++i) q[i] = -g.k * geom.a_ext * (t[i] - b.t_amb);
    const int source_in = g.orientation == TankOrientation::hot ? n - 1 : 0;
    const int load_in = g.orientation == TankOrientation::hot ? 0 : n - 1;
    q[source_in] += b.m_source * c * (b.t_source_feed - t[source_in]);
    q[load_in] += b.m_load * c * (b.t_load_return - t[load_in]);
    return q;
}

void check_faces(const TankGeometry& g, std::span<const double> faces) {
    if (static_cast<int>(faces.size()) != g.layers - 1) {
        throw InvalidInput("expected " + std::to_string(g.layers - 1) + " face flows, got " +
                           std::to_string(faces.size()));
    }
}

template <class Split>
std::vector<double> derivatives(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                const TankBoundary& b, std::span<const double> faces, Split split) {
    check_state(g, s);
    check_faces(g, faces);
    const double c = g.fluid.cp;
    const double cond = geom.a * g.lambda_eff / geom.z;
    const auto& t = s.temps;
    std::vector<double> q = port_and_loss_terms(g, geom, s, b);
    for (int j = 0; j + 1 < g.layers; ++j) {
        const double a = t[j + 1] - t[j];
        const auto [down, up] = split(faces[j]);
        q[j] += down * c * a + cond * a;
        q[j + 1] += up * c * a - cond * a;
    }
    const double cap = geom.mass * c;
    for (double& v : q) v /= cap;
    return q;
}

}  // namespace

std::vector<double> tank_derivatives_smooth(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                            const TankBoundary& b, std::span<const double> faces, double omega) {
    if (!(omega > 0.0)) throw InvalidInput("omega must be positive");
    return derivatives(g, geom, s, b, faces, [omega](double f) {
        const double r = std::sqrt(f * f + omega);
        return std::pair{(f + r) / 2.0, (f - r) / 2.0};
    });
}

std::vector<double> tank_derivatives_smooth(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                            const TankBoundary& b, double omega) {
    return tank_derivatives_smooth(g, geom, s, b, interlayer_flows(g, b), omega);
}

std::vector<double> tank_derivatives_reference(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                               const TankBoundary& b, std::span<const double> faces) {
    return derivatives(g, geom, s, b, faces, [](double f) {
        if (f > 0.0) return std::pair{f, 0.0};
        return std::pair{0.0, f};
    });
}

std::vector<double> tank_derivatives_reference(const TankGeometry& g, const LayerGeometry& geom, const TankState& s,
                                               const TankBoundary& b) {
    return tank_derivatives_reference(g, geom, s, b, interlayer_flows(g, b));
}

TankOutlets outlet_temps(const TankGeometry& g, const TankState& s) {
    check_state(g, s);
    const double source_return = g.orientation == TankOrientation::hot ? s.temps.front() : s.temps.back();
    return {source_return, s.temps[g.load_layer - 1]};
}

std::vector<double> sensor_temps(const TankGeometry& g, const TankState& s, int n_sensors) {
    check_state(g, s);
    if (n_sensors < 1 || g.layers % n_sensors != 0) {
        throw InvalidInput(std::to_string(g.layers) + " layers cannot be split into " + std::to_string(n_sensors) +
                           " sensor blocks");
    }
    const int block = g.layers / n_sensors;
    std::vector<double> out(n_sensors, 0.0);
    for (int k = 0; k < n_sensors; ++k) {
        double sum = 0.0;
        for (int i = 0; i < block; ++i) sum += s.temps[k * block + i];
        out[k] = sum / block;
    }
    return out;
}

double tank_enthalpy(const TankGeometry& g, const LayerGeometry& geom, const TankState& s) {
    check_state(g, s);
    double sum = 0.0;
    for (double t : s.temps) sum += t;
    return geom.mass * g.fluid.cp * sum;
}

double tank_loss(const TankGeometry& g, const LayerGeometry& geom, const TankState& s, double t_amb) {
    check_state(g, s);
    double sum = 0.0;
    for (double t : s.temps) sum += t - t_amb;
    return g.k * geom.a_ext * sum;
}

}  // namespace greybox
