#pragma once

// Validation statistics over measured (y) and simulated (y*) series.

#include <span>
#include <vector>

namespace greybox {

struct PairedSeries {
    std::vector<double> t;
    std::vector<double> y;       // measured
    std::vector<double> y_star;  // simulated

    void validate() const;
};

struct TimedSeries {
    std::vector<double> t;
    std::vector<double> y;
};

// Resamples measured data onto the simulated grid points inside the overlap
// of both spans. Throws AlignmentError when the overlap holds no grid point.
PairedSeries align(const TimedSeries& measured, const TimedSeries& simulated);

// Root mean squared error normalised by the measured range.
double nrmsre(const PairedSeries& p);

// Squared Pearson correlation.
double r_squared(const PairedSeries& p);

// 100 * (1 - ||y* - y|| / ||y - mean(y)||). Unbounded below.
double gof(const PairedSeries& p);

// Trailing mean over `window` samples (shorter at the start).
std::vector<double> rolling_mean(std::span<const double> x, int window);

}  // namespace greybox
