#pragma once

#include <vector>

namespace greybox {

// Sampled boundary signal, e.g. ambient temperature or a load profile.
struct TimeSeries {
    std::vector<double> t;  // s, strictly increasing
    std::vector<double> v;

    static TimeSeries constant(double value) { return {{0.0}, {value}}; }
    void validate() const;
};

// Piecewise-linear interpolation with endpoint hold. Throws ConfigError on an
// empty series.
double lookup_boundary(const TimeSeries& s, double t);

}  // namespace greybox
