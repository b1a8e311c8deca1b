#pragma once

// Shared helpers for the test binaries: seeded generators and independent
// oracles written out term by term, so they share no code with the library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "greybox/plant.h"

namespace testsupport {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double sign() { return integer(0, 1) ? 1.0 : -1.0; }

    std::vector<double> uniforms(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (double& x : v) x = uniform(lo, hi);
        return v;
    }

private:
    std::mt19937_64 rng_;
};

// Published fit rows.
inline const std::vector<double> kRowD{3.66, 0.49, 0.252, -0.6, 0.003, 0.0, 0.014, 0.01, -0.03, -0.004};
inline const std::vector<double> kRowE{0.42, -0.02, 0.006, 0.002, -0.001, 0.0, -0.001, 0.0, 0.002, 0.0};
inline const std::vector<double> kRowB{0.43, -0.15, 0.0};
inline const std::vector<double> kRowG{9.0, 0.06, 0.29, 0.002, -0.001, -0.001};
inline const std::vector<double> kRowH{9.0, 0.04, 0.30, 0.002, -0.002, -0.001};
inline const std::vector<double> kRowI{1.83, -0.007, 0.019, 0.0, 0.0, 0.0};
inline constexpr double kRowC = 560.78;

// Three-variable quadratic written out in the printed term order.
inline double quad3(const std::vector<double>& c, double x1, double x2, double x3) {
    return c[0] + c[1] * x1 + c[2] * x2 + c[3] * x3 + c[4] * x1 * x1 + c[5] * x2 * x2 + c[6] * x3 * x3 +
           c[7] * x1 * x2 + c[8] * x1 * x3 + c[9] * x2 * x3;
}

inline double quad2(const std::vector<double>& c, double x1, double x2) {
    return c[0] + c[1] * x1 + c[2] * x2 + c[3] * x1 * x2 + c[4] * x1 * x1 + c[5] * x2 * x2;
}

inline greybox::PlantConfig default_plant() {
    using namespace greybox;
    PlantConfig cfg;
    AdcmParams adcm;
    adcm.capacity_kw = PolyMap(3, kRowD);
    adcm.cop = PolyMap(3, kRowE);
    cfg.adcm = adcm;
    ChpParams chp;
    chp.flow_map = PolyMap(1, kRowB);
    cfg.chp = chp;
    RevHpParams hp;
    hp.heating_kw = PolyMap(2, kRowG);
    hp.cooling_kw = PolyMap(2, kRowH);
    hp.power_kw = PolyMap(2, kRowI);
    cfg.revhp = hp;
    cfg.oc = OcParams{};
    TankGeometry htes;
    htes.height = 1.5 / (std::numbers::pi * 0.99 * 0.99 / 4.0);
    htes.layers = 90;
    htes.load_layer = 60;
    cfg.htes = htes;
    TankGeometry ctes = htes;
    ctes.height = 1.45 / (std::numbers::pi * 0.99 * 0.99 / 4.0);
    ctes.layers = 40;
    ctes.load_layer = 1;
    ctes.orientation = TankOrientation::cold;
    cfg.ctes = ctes;
    cfg.loads = LoadParams{};
    return cfg;
}

}  // namespace testsupport
