// Copyright (c) 2026 The geoleo-rsma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rsma/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace rsma {

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kLeft = 80.0, kRight = 180.0, kTop = 50.0, kBottom = 60.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo, hi, step;
};

Axis nice_axis(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = lo == 0.0 ? 1.0 : std::fabs(lo) * 0.1;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

} // namespace

std::string render_svg(const Plot& plot) {
    if (plot.series.empty()) throw ConfigError("plot: no series to draw");
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : plot.series) {
        if (s.x.empty()) throw ConfigError("plot: series '" + s.name + "' is empty");
        if (s.x.size() != s.y.size())
            throw ConfigError("plot: series '" + s.name + "' has mismatched x and y");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                throw ConfigError("plot: series '" + s.name + "' has a non-finite point");
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    }
    const Axis ax = nice_axis(x0, x1), ay = nice_axis(y0, y1);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    const auto sx = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * pw; };
    const auto sy = [&](double y) { return kTop + ph - (y - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape(plot.title) << "</text>\n";

    o << "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"1\">\n";
    for (double t = ax.lo; t <= ax.hi + ax.step * 1e-9; t += ax.step) {
        const double x = sx(t);
        o << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x)
          << "\" y2=\"" << num(kTop + ph) << "\" stroke=\"#e0e0e0\"/>\n"
          << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 16)
          << "\" text-anchor=\"middle\">" << num(std::fabs(t) < ax.step * 1e-9 ? 0.0 : t)
          << "</text>\n";
    }
    for (double t = ay.lo; t <= ay.hi + ay.step * 1e-9; t += ay.step) {
        const double y = sy(t);
        o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft + pw)
          << "\" y2=\"" << num(y) << "\" stroke=\"#e0e0e0\"/>\n"
          << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
          << "\" text-anchor=\"end\">" << num(std::fabs(t) < ay.step * 1e-9 ? 0.0 : t)
          << "</text>\n";
    }
    o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "</g>\n";
    o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 16)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(plot.x_label) << "</text>\n"
      << "<text x=\"20\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 20 "
      << num(kTop + ph / 2) << ")\">" << escape(plot.y_label) << "</text>\n";

    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const auto& s = plot.series[i];
        const char* color = kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
        if (s.x.size() > 1) {
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            for (std::size_t k = 0; k < s.x.size(); ++k)
                o << (k ? " " : "") << num(sx(s.x[k])) << ',' << num(sy(s.y[k]));
            o << "\"/>\n";
        }
        if (s.x.size() <= 50) {
            for (std::size_t k = 0; k < s.x.size(); ++k)
                o << "<circle cx=\"" << num(sx(s.x[k])) << "\" cy=\"" << num(sy(s.y[k]))
                  << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
        }
        const double ly = kTop + 14 + 22.0 * static_cast<double>(i);
        const double lx = kLeft + pw + 16;
        o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24)
          << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
          << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

Plot plot_from_results(const SweepResult& result) {
    Plot plot;
    plot.y_label = "Mean sum rate (Mbit/s)";
    switch (result.variable) {
    case SweepVariable::total_power:
        plot.title = "Sum rate versus total power";
        plot.x_label = "Total transmit power P_tot (W)";
        break;
    case SweepVariable::interference_threshold:
        plot.title = "Sum rate versus interference threshold";
        plot.x_label = "Interference threshold I_th (W)";
        break;
    case SweepVariable::dims:
        plot.title = "Sum rate versus system size";
        plot.x_label = "Subcarriers K (count)";
        break;
    }
    for (const auto& scheme : result.schemes) {
        Series s{scheme, {}, {}};
        for (std::size_t p = 0; p < result.labels.size(); ++p) {
            const auto& summary = result.at(scheme, p);
            if (summary.feasible == 0) continue;
            s.x.push_back(result.coordinates[p]);
            s.y.push_back(summary.mean_mbps);
        }
        if (!s.x.empty()) plot.series.push_back(std::move(s));
    }
    return plot;
}

Plot plot_from_trace(const SolveReport& report) {
    Plot plot;
    plot.title = "Dual convergence";
    plot.x_label = "Inner iteration (count, cumulative)";
    plot.y_label = "Multiplier norm (dimensionless)";
    for (std::size_t f = 0; f < kDualFamilies; ++f) plot.series.push_back({kDualFamilyNames[f], {}, {}});
    double step = 0.0;
    for (const auto& r : report.trace) {
        if (r.inner == 0) continue;
        step += 1.0;
        for (std::size_t f = 0; f < kDualFamilies; ++f) {
            plot.series[f].x.push_back(step);
            plot.series[f].y.push_back(r.dual_norm[f]);
        }
    }
    return plot;
}

void render_plot(const SweepResult& result, const std::filesystem::path& path) {
    write_text_file(path, render_svg(plot_from_results(result)));
}

void render_plot(const SolveReport& report, const std::filesystem::path& path) {
    write_text_file(path, render_svg(plot_from_trace(report)));
}

} // namespace rsma
