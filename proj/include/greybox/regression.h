#pragma once

// Grey-box identification: full quadratic performance maps fitted by
// (optionally relative) least squares, and first-order (PT-1) step-response
// identification.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace greybox {

// Quadratic map in 1..3 variables. Coefficient order follows the printed
// equation families:
//   1 var : [1, x, x^2]
//   2 vars: [1, x1, x2, x1*x2, x1^2, x2^2]
//   3 vars: [1, x1, x2, x3, x1^2, x2^2, x3^2, x1*x2, x1*x3, x2*x3]
class PolyMap {
public:
    PolyMap() : PolyMap(1, {0.0, 0.0, 0.0}) {}
    PolyMap(int n_vars, std::vector<double> coeffs);

    static std::size_t coeff_count(int n_vars);

    int n_vars() const { return n_vars_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double operator()(std::span<const double> x) const;
    double operator()(double x1) const;
    double operator()(double x1, double x2) const;
    double operator()(double x1, double x2, double x3) const;

private:
    int n_vars_;
    std::vector<double> coeffs_;
};

std::vector<double> basis(int n_vars, std::span<const double> x);

// Human-readable term names ("1", "x1", "x1^2", "x1*x2", ...) in basis order.
std::vector<std::string> basis_names(int n_vars);

double eval_map(const PolyMap& map, std::span<const double> x);

struct Sample {
    std::vector<double> x;
    double y = 0.0;
};

struct MapFit {
    PolyMap map;
    // Sum of squared relative residuals when normalized, else plain SSE.
    double objective = 0.0;
    std::vector<double> residuals;  // y_i - y*_i
};

// |y| at or below this is rejected when fitting relative errors.
inline constexpr double kRelativeFitFloor = 1e-9;

// Least squares over the full quadratic basis. With `normalize`, minimizes
// sum(((y - y*)/y)^2). Inputs are centred and scaled internally; returned
// coefficients are in raw input units.
MapFit fit_map(std::span<const Sample> samples, int n_vars, bool normalize);

struct StepPoint {
    double t = 0.0;  // s
    double y = 0.0;
};

struct StepResponseFit {
    double gain = 0.0;           // K_S, output per unit step
    double time_constant = 0.0;  // T_S, s
    bool time_constant_determined = true;
    double sse = 0.0;
};

// Fits y(t) = K u (1 - exp(-t/T)). K is solved in closed form for every trial
// T; T is located by a log-grid scan over [1 s, 10 x duration] followed by
// golden-section refinement.
StepResponseFit fit_step_response(std::span<const StepPoint> series, double step);

// Mean gain and time constant over several step tests; tests with an
// undetermined time constant contribute only to the gain.
StepResponseFit average_step_fits(std::span<const StepResponseFit> fits);

}  // namespace greybox
