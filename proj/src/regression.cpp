#include "greybox/regression.h"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "greybox/errors.h"

namespace greybox {

namespace {

// Positions of each term family inside the basis for a given variable count.
struct TermLayout {
    std::array<int, 3> linear{-1, -1, -1};
    std::array<int, 3> square{-1, -1, -1};
    std::array<std::array<int, 3>, 3> cross{{{-1, -1, -1}, {-1, -1, -1}, {-1, -1, -1}}};
};

TermLayout layout(int n_vars) {
    TermLayout l;
    switch (n_vars) {
        case 1:
            l.linear[0] = 1;
            l.square[0] = 2;
            break;
        case 2:
            l.linear = {1, 2, -1};
            l.cross[0][1] = l.cross[1][0] = 3;
            l.square = {4, 5, -1};
            break;
        case 3:
            l.linear = {1, 2, 3};
            l.square = {4, 5, 6};
            l.cross[0][1] = l.cross[1][0] = 7;
            l.cross[0][2] = l.cross[2][0] = 8;
            l.cross[1][2] = l.cross[2][1] = 9;
            break;
        default:
            throw InvalidInput("n_vars must be 1, 2 or 3, got " + std::to_string(n_vars));
    }
    return l;
}

void basis_into(int n_vars, std::span<const double> x, std::span<double> out) {
    const TermLayout l = layout(n_vars);
    out[0] = 1.0;
    for (int j = 0; j < n_vars; ++j) {
        out[l.linear[j]] = x[j];
        out[l.square[j]] = x[j] * x[j];
        for (int k = j + 1; k < n_vars; ++k) out[l.cross[j][k]] = x[j] * x[k];
    }
}

void check_dimension(int n_vars, std::size_t got) {
    if (got != static_cast<std::size_t>(n_vars)) {
        throw InvalidInput("expected " + std::to_string(n_vars) + " inputs, got " + std::to_string(got));
    }
}

// Rewrites a quadratic in u_j = (x_j - centre_j)/scale_j into raw x coordinates.
std::vector<double> to_raw_units(int n_vars, const std::vector<double>& c, const std::vector<double>& centre,
                                 const std::vector<double>& scale) {
    const TermLayout l = layout(n_vars);
    std::vector<double> a(n_vars), d(n_vars);
    for (int j = 0; j < n_vars; ++j) {
        a[j] = 1.0 / scale[j];
        d[j] = -centre[j] / scale[j];
    }
    std::vector<double> raw(c.size(), 0.0);
    raw[0] = c[0];
    for (int j = 0; j < n_vars; ++j) {
        const double lin = c[l.linear[j]];
        const double sq = c[l.square[j]];
        raw[0] += lin * d[j] + sq * d[j] * d[j];
        raw[l.linear[j]] += lin * a[j] + 2.0 * sq * a[j] * d[j];
        raw[l.square[j]] += sq * a[j] * a[j];
        for (int k = j + 1; k < n_vars; ++k) {
            const double q = c[l.cross[j][k]];
            raw[0] += q * d[j] * d[k];
            raw[l.linear[j]] += q * a[j] * d[k];
            raw[l.linear[k]] += q * a[k] * d[j];
            raw[l.cross[j][k]] += q * a[j] * a[k];
        }
    }
    return raw;
}

}  // namespace

std::size_t PolyMap::coeff_count(int n_vars) {
    switch (n_vars) {
        case 1: return 3;
        case 2: return 6;
        case 3: return 10;
        default: throw InvalidInput("n_vars must be 1, 2 or 3, got " + std::to_string(n_vars));
    }
}

PolyMap::PolyMap(int n_vars, std::vector<double> coeffs) : n_vars_(n_vars), coeffs_(std::move(coeffs)) {
    const std::size_t expected = coeff_count(n_vars);
    if (coeffs_.size() != expected) {
        throw InvalidInput("a " + std::to_string(n_vars) + "-variable map needs " + std::to_string(expected) +
                           " coefficients, got " + std::to_string(coeffs_.size()));
    }
}

double PolyMap::operator()(std::span<const double> x) const { return eval_map(*this, x); }

double PolyMap::operator()(double x1) const {
    const std::array<double, 1> x{x1};
    return eval_map(*this, x);
}

double PolyMap::operator()(double x1, double x2) const {
    const std::array<double, 2> x{x1, x2};
    return eval_map(*this, x);
}

double PolyMap::operator()(double x1, double x2, double x3) const {
    const std::array<double, 3> x{x1, x2, x3};
    return eval_map(*this, x);
}

std::vector<double> basis(int n_vars, std::span<const double> x) {
    std::vector<double> out(PolyMap::coeff_count(n_vars));
    check_dimension(n_vars, x.size());
    basis_into(n_vars, x, out);
    return out;
}

std::vector<std::string> basis_names(int n_vars) {
    const TermLayout l = layout(n_vars);
    std::vector<std::string> names(PolyMap::coeff_count(n_vars));
    names[0] = "1";
    for (int j = 0; j < n_vars; ++j) {
        const std::string xj = "x" + std::to_string(j + 1);
        names[l.linear[j]] = xj;
        names[l.square[j]] = xj + "^2";
        for (int k = j + 1; k < n_vars; ++k) names[l.cross[j][k]] = xj + "*x" + std::to_string(k + 1);
    }
    return names;
}

double eval_map(const PolyMap& map, std::span<const double> x) {
    check_dimension(map.n_vars(), x.size());
    std::array<double, 10> b{};
    basis_into(map.n_vars(), x, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < map.coeffs().size(); ++i) sum += map.coeffs()[i] * b[i];
    return sum;
}

MapFit fit_map(std::span<const Sample> samples, int n_vars, bool normalize) {
    const std::size_t k = PolyMap::coeff_count(n_vars);
    const std::size_t n = samples.size();
    if (n < k) {
        throw DegenerateFit("underdetermined fit: " + std::to_string(n) + " samples for " + std::to_string(k) +
                                " coefficients",
                            {});
    }
    for (std::size_t i = 0; i < n; ++i) {
        check_dimension(n_vars, samples[i].x.size());
        bool finite = std::isfinite(samples[i].y);
        for (double v : samples[i].x) finite = finite && std::isfinite(v);
        if (!finite) throw InvalidSample("sample " + std::to_string(i) + " contains a non-finite value");
        if (normalize && std::abs(samples[i].y) <= kRelativeFitFloor) {
            throw InvalidSample("sample " + std::to_string(i) + " has |y| <= " + std::to_string(kRelativeFitFloor) +
                                ", relative residual undefined");
        }
    }

    std::vector<double> centre(n_vars, 0.0), scale(n_vars, 1.0);
    for (int j = 0; j < n_vars; ++j) {
        double mean = 0.0;
        for (const auto& s : samples) mean += s.x[j];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& s : samples) var += (s.x[j] - mean) * (s.x[j] - mean);
        const double sd = std::sqrt(var / static_cast<double>(n));
        centre[j] = mean;
        scale[j] = sd > 0.0 ? sd : 1.0;
    }

    Eigen::MatrixXd a(n, k);
    Eigen::VectorXd rhs(n);
    std::array<double, 3> u{};
    std::array<double, 10> row{};
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < n_vars; ++j) u[j] = (samples[i].x[j] - centre[j]) / scale[j];
        basis_into(n_vars, std::span<const double>(u.data(), n_vars), row);
        const double w = normalize ? 1.0 / samples[i].y : 1.0;
        for (std::size_t c = 0; c < k; ++c) a(i, c) = w * row[c];
        rhs(i) = w * samples[i].y;
    }

    Eigen::VectorXd col_norm = a.colwise().norm();
    for (std::size_t c = 0; c < k; ++c) {
        if (col_norm(c) == 0.0) col_norm(c) = 1.0;
        a.col(c) /= col_norm(c);
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double tol = sv(0) * 1e-10 * static_cast<double>(std::max(n, k));
    std::vector<std::string> deficient;
    const auto names = basis_names(n_vars);
    for (Eigen::Index c = 0; c < sv.size(); ++c) {
        if (sv(c) > tol) continue;
        Eigen::Index arg = 0;
        svd.matrixV().col(c).cwiseAbs().maxCoeff(&arg);
        deficient.push_back(names[arg]);
    }
    if (!deficient.empty()) {
        std::string list;
        for (const auto& d : deficient) list += (list.empty() ? "" : ", ") + d;
        throw DegenerateFit("rank-deficient design (" + std::to_string(deficient.size()) +
                                " deficient direction(s) dominated by: " + list + ")",
                            deficient);
    }

    Eigen::VectorXd beta = svd.solve(rhs);
    std::vector<double> scaled(k);
    for (std::size_t c = 0; c < k; ++c) scaled[c] = beta(c) / col_norm(c);

    MapFit fit{PolyMap(n_vars, to_raw_units(n_vars, scaled, centre, scale)), 0.0, {}};
    fit.residuals.reserve(n);
    for (const auto& s : samples) {
        const double r = s.y - eval_map(fit.map, s.x);
        fit.residuals.push_back(r);
        const double term = normalize ? r / s.y : r;
        fit.objective += term * term;
    }
    return fit;
}

namespace {

struct StepObjective {
    std::span<const StepPoint> series;
    double step;

    // Returns SSE at time constant T with the optimal gain written to `gain`.
    double operator()(double time_constant, double& gain) const {
        double sxy = 0.0, sxx = 0.0;
        for (const auto& p : series) {
            const double phi = step * (1.0 - std::exp(-p.t / time_constant));
            sxy += phi * p.y;
            sxx += phi * phi;
        }
        gain = sxx > 0.0 ? sxy / sxx : 0.0;
        double sse = 0.0;
        for (const auto& p : series) {
            const double r = p.y - gain * step * (1.0 - std::exp(-p.t / time_constant));
            sse += r * r;
        }
        return sse;
    }
};

}  // namespace

StepResponseFit fit_step_response(std::span<const StepPoint> series, double step) {
    if (step == 0.0 || !std::isfinite(step)) throw InvalidInput("step magnitude must be finite and non-zero");
    if (series.size() < 5) throw InvalidInput("step response needs at least 5 points");
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!std::isfinite(series[i].t) || !std::isfinite(series[i].y)) {
            throw InvalidInput("step response point " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(series[i].t > series[i - 1].t)) {
            throw InvalidInput("step response time must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
    const double duration = series.back().t - series.front().t;
    if (std::abs(series.front().t) > 1e-9 * std::max(1.0, duration)) {
        throw InvalidInput("step response series must start at t = 0");
    }

    const bool all_zero = std::all_of(series.begin(), series.end(), [](const StepPoint& p) { return p.y == 0.0; });
    if (all_zero) return {0.0, duration, false, 0.0};

    const StepObjective objective{series, step};
    const double lo = 1.0;
    const double hi = 10.0 * duration;

    constexpr int kGrid = 96;
    std::vector<double> grid(kGrid);
    int best = 0;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (kGrid - 1));
        double g = 0.0;
        const double sse = objective(grid[i], g);
        if (sse < best_sse) {
            best_sse = sse;
            best = i;
        }
    }
    double a = grid[std::max(best - 1, 0)];
    double b = grid[std::min(best + 1, kGrid - 1)];

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gain_c = 0.0, gain_d = 0.0;
    double fc = objective(c, gain_c);
    double fd = objective(d, gain_d);
    while ((b - a) > 1e-6 * 0.5 * (a + b)) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c, gain_c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d, gain_d);
        }
    }
    StepResponseFit fit;
    fit.time_constant = 0.5 * (a + b);
    fit.sse = objective(fit.time_constant, fit.gain);
    return fit;
}

StepResponseFit average_step_fits(std::span<const StepResponseFit> fits) {
    if (fits.empty()) throw InvalidInput("no step fits to average");
    StepResponseFit mean{0.0, 0.0, false, 0.0};
    int determined = 0;
    for (const auto& f : fits) {
        mean.gain += f.gain;
        mean.sse += f.sse;
        if (f.time_constant_determined) {
            mean.time_constant += f.time_constant;
            ++determined;
        }
    }
    mean.gain /= static_cast<double>(fits.size());
    if (determined > 0) {
        mean.time_constant /= determined;
        mean.time_constant_determined = true;
    }
    return mean;
}

}  // namespace greybox
