#include "greybox/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "greybox/boundary.h"
#include "greybox/errors.h"

namespace greybox {

void PairedSeries::validate() const {
    if (y.size() != y_star.size()) throw InvalidInput("paired series lengths differ");
    if (y.size() < 2) throw InvalidInput("paired series need at least 2 points");
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!std::isfinite(y[i]) || !std::isfinite(y_star[i])) {
            throw InvalidInput("paired series point " + std::to_string(i) + " is not finite");
        }
    }
}

PairedSeries align(const TimedSeries& measured, const TimedSeries& simulated) {
    if (measured.t.empty() || simulated.t.empty()) throw AlignmentError("cannot align an empty series");
    const double lo = std::max(measured.t.front(), simulated.t.front());
    const double hi = std::min(measured.t.back(), simulated.t.back());
    const TimeSeries m{measured.t, measured.y};
    PairedSeries out;
    for (std::size_t i = 0; i < simulated.t.size(); ++i) {
        const double t = simulated.t[i];
        if (t < lo || t > hi) continue;
        out.t.push_back(t);
        out.y.push_back(lookup_boundary(m, t));
        out.y_star.push_back(simulated.y[i]);
    }
    if (out.t.empty()) throw AlignmentError("measured and simulated spans do not overlap");
    return out;
}

double nrmsre(const PairedSeries& p) {
    p.validate();
    const auto [mn, mx] = std::minmax_element(p.y.begin(), p.y.end());
    const double range = *mx - *mn;
    if (!(range > 0.0)) throw DegenerateRange("degenerate range: measured series is constant");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.y.size(); ++i) {
        const double e = (p.y[i] - p.y_star[i]) / range;
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(p.y.size()));
}

namespace {

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double r_squared(const PairedSeries& p) {
    p.validate();
    const double my = mean(p.y);
    const double ms = mean(p.y_star);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < p.y.size(); ++i) {
        const double a = p.y[i] - my;
        const double b = p.y_star[i] - ms;
        sxy += a * b;
        sxx += a * a;
        syy += b * b;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw DegenerateVariance("degenerate variance: a series is constant");
    return std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
}

double gof(const PairedSeries& p) {
    p.validate();
    const double my = mean(p.y);
    double sse = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < p.y.size(); ++i) {
        sse += (p.y_star[i] - p.y[i]) * (p.y_star[i] - p.y[i]);
        sst += (p.y[i] - my) * (p.y[i] - my);
    }
    if (!(sst > 0.0)) throw DegenerateVariance("degenerate variance: measured series is constant");
    return 100.0 * (1.0 - std::sqrt(sse / sst));
}

std::vector<double> rolling_mean(std::span<const double> x, int window) {
    if (window < 1) throw InvalidInput("rolling window must be at least 1");
    std::vector<double> out(x.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i];
        if (i >= static_cast<std::size_t>(window)) sum -= x[i - window];
        const std::size_t n = std::min(i + 1, static_cast<std::size_t>(window));
        out[i] = sum / static_cast<double>(n);
    }
    return out;
}

}  // namespace greybox
