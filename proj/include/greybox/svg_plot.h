#pragma once

#include <string>
#include <vector>

namespace greybox {

struct PlotSeries {
    std::string label;
    std::vector<double> t;  // s
    std::vector<double> y;
    bool dashed = true;  // simulated traces are dashed, measured solid
};

// Self-contained SVG line chart with the time axis in minutes.
std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title);

}  // namespace greybox
