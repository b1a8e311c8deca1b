#include "greybox/boundary.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "greybox/errors.h"

namespace greybox {

void TimeSeries::validate() const {
    if (t.empty()) throw ConfigError("boundary series is empty");
    if (t.size() != v.size()) throw ConfigError("boundary series time and value lengths differ");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!std::isfinite(t[i]) || !std::isfinite(v[i])) {
            throw ConfigError("boundary series sample " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(t[i] > t[i - 1])) throw ConfigError("boundary series time must be strictly increasing");
    }
}

double lookup_boundary(const TimeSeries& s, double t) {
    if (s.t.empty() || s.v.size() != s.t.size()) throw ConfigError("boundary series is empty");
    if (t <= s.t.front()) return s.v.front();
    if (t >= s.t.back()) return s.v.back();
    const auto hi = std::upper_bound(s.t.begin(), s.t.end(), t);
    const std::size_t j = static_cast<std::size_t>(hi - s.t.begin());
    const double w = (t - s.t[j - 1]) / (s.t[j] - s.t[j - 1]);
    return s.v[j - 1] + w * (s.v[j] - s.v[j - 1]);
}

}  // namespace greybox
