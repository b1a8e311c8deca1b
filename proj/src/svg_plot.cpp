#include "greybox/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "greybox/csv.h"
#include "greybox/errors.h"

namespace greybox {

namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 180.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#8c564b", "#e377c2", "#7f7f7f", "#17becf", "#bcbd22"};

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const std::string& title) {
    if (series.empty()) throw InvalidInput("nothing to plot");
    double t0 = std::numeric_limits<double>::infinity(), t1 = -t0;
    double y0 = t0, y1 = -t0;
    for (const auto& s : series) {
        if (s.t.size() != s.y.size()) throw InvalidInput("series '" + s.label + "' has mismatched lengths");
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            t0 = std::min(t0, s.t[i] / 60.0);
            t1 = std::max(t1, s.t[i] / 60.0);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    if (!std::isfinite(t0)) throw InvalidInput("all series are empty");
    if (t1 <= t0) t1 = t0 + 1.0;
    if (y1 <= y0) {
        y0 -= 1.0;
        y1 += 1.0;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto px = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * pw; };
    const auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";

    const double tx = nice_step(t1 - t0, 8);
    for (double t = std::ceil(t0 / tx) * tx; t <= t1 + 1e-9; t += tx) {
        svg << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << fixed(kTop) << "\" x2=\"" << fixed(px(t)) << "\" y2=\""
            << fixed(kTop + ph) << "\" stroke=\"#e0e0e0\"/>\n";
        svg << "<text x=\"" << fixed(px(t)) << "\" y=\"" << fixed(kTop + ph + 18) << "\" text-anchor=\"middle\">"
            << format_number(t) << "</text>\n";
    }
    const double ty = nice_step(y1 - y0, 6);
    for (double y = std::ceil(y0 / ty) * ty; y <= y1 + 1e-9; y += ty) {
        svg << "<line x1=\"" << fixed(kLeft) << "\" y1=\"" << fixed(py(y)) << "\" x2=\"" << fixed(kLeft + pw)
            << "\" y2=\"" << fixed(py(y)) << "\" stroke=\"#e0e0e0\"/>\n";
        svg << "<text x=\"" << fixed(kLeft - 6) << "\" y=\"" << fixed(py(y) + 4) << "\" text-anchor=\"end\">"
            << format_number(std::abs(y) < 1e-12 * ty ? 0.0 : y) << "</text>\n";
    }
    svg << "<rect x=\"" << fixed(kLeft) << "\" y=\"" << fixed(kTop) << "\" width=\"" << fixed(pw) << "\" height=\""
        << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fixed(kLeft + pw / 2) << "\" y=\"" << fixed(kHeight - 10)
        << "\" text-anchor=\"middle\">time (min)</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* colour = kPalette[k % std::size(kPalette)];
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
        if (s.dashed) svg << " stroke-dasharray=\"6,4\"";
        svg << " points=\"";
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            svg << (i ? " " : "") << fixed(px(s.t[i] / 60.0)) << ',' << fixed(py(s.y[i]));
        }
        svg << "\"/>\n";
        const double ly = kTop + 14.0 + 18.0 * static_cast<double>(k);
        const double lx = kLeft + pw + 12.0;
        svg << "<line x1=\"" << fixed(lx) << "\" y1=\"" << fixed(ly - 4) << "\" x2=\"" << fixed(lx + 28)
            << "\" y2=\"" << fixed(ly - 4) << "\" stroke=\"" << colour << "\" stroke-width=\"1.5\""
            << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        svg << "<text x=\"" << fixed(lx + 34) << "\" y=\"" << fixed(ly) << "\">" << escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace greybox
