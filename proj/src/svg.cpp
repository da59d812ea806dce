#include "ecgsep/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "ecgsep/errors.hpp"

namespace ecgsep {

namespace {

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                               "#9467bd", "#ff7f0e", "#8c564b"};

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// largest of 1/2/5 * 10^k not exceeding range/n
double tick_step(double range, int n) {
    const double raw = range / n;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {5.0, 2.0, 1.0})
        if (m * mag <= raw) return m * mag;
    return mag;
}

} // namespace

void write_svg_plot(std::span<const PlotSeries> series, std::ostream& sink,
                    int width, int height) {
    if (series.empty()) throw ConfigError("nothing to plot");
    for (const PlotSeries& s : series) {
        if (s.t.size() != s.v.size())
            throw ConfigError("series '" + s.label + "' has mismatched t/v lengths");
        if (s.t.empty()) throw ConfigError("series '" + s.label + "' is empty");
    }

    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    double vmin = tmin, vmax = -tmin;
    for (const PlotSeries& s : series) {
        for (double t : s.t) { tmin = std::min(tmin, t); tmax = std::max(tmax, t); }
        for (double v : s.v) { vmin = std::min(vmin, v); vmax = std::max(vmax, v); }
    }
    if (tmax == tmin) { tmax += 1.0; tmin -= 1.0; }
    if (vmax == vmin) { vmax += 1.0; vmin -= 1.0; }
    const double vpad = 0.05 * (vmax - vmin);
    vmin -= vpad;
    vmax += vpad;

    const int left = 64, right = 16, top = 16, bottom = 40;
    const int pw = width - left - right;
    const int ph = height - top - bottom;
    auto px = [&](double t) { return left + pw * (t - tmin) / (tmax - tmin); };
    auto py = [&](double v) { return top + ph * (vmax - v) / (vmax - vmin); };

    sink << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
         << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
         << height << "\">\n";
    sink << "<rect width=\"" << width << "\" height=\"" << height
         << "\" fill=\"white\"/>\n";

    // gridlines and tick labels
    const double xstep = tick_step(tmax - tmin, 8);
    const double ystep = tick_step(vmax - vmin, 6);
    sink << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double x = std::ceil(tmin / xstep) * xstep; x <= tmax; x += xstep) {
        sink << "<line x1=\"" << num(px(x)) << "\" y1=\"" << top << "\" x2=\""
             << num(px(x)) << "\" y2=\"" << top + ph
             << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        sink << "<text x=\"" << num(px(x)) << "\" y=\"" << top + ph + 16
             << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
    }
    for (double y = std::ceil(vmin / ystep) * ystep; y <= vmax; y += ystep) {
        sink << "<line x1=\"" << left << "\" y1=\"" << num(py(y)) << "\" x2=\""
             << left + pw << "\" y2=\"" << num(py(y))
             << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        sink << "<text x=\"" << left - 6 << "\" y=\"" << num(py(y) + 4)
             << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
    }
    sink << "</g>\n";
    sink << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw
         << "\" height=\"" << ph
         << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* color = palette[si % (sizeof palette / sizeof *palette)];
        sink << "<polyline fill=\"none\" stroke=\"" << color
             << "\" stroke-width=\"1\" points=\"";
        if (s.t.size() > static_cast<std::size_t>(2 * pw)) {
            // one min/max pair per pixel column keeps the pulses visible
            std::size_t i = 0;
            for (int col = 0; col < pw && i < s.t.size(); ++col) {
                const double tcol = tmin + (tmax - tmin) * (col + 1.0) / pw;
                double lo = s.v[i], hi = s.v[i];
                const std::size_t begin = i;
                while (i < s.t.size() && (s.t[i] <= tcol || i == begin)) {
                    lo = std::min(lo, s.v[i]);
                    hi = std::max(hi, s.v[i]);
                    ++i;
                }
                const double x = left + pw * (col + 0.5) / pw;
                sink << num(x) << ',' << num(py(hi)) << ' ' << num(x) << ','
                     << num(py(lo)) << ' ';
            }
        } else {
            for (std::size_t i = 0; i < s.t.size(); ++i)
                sink << num(px(s.t[i])) << ',' << num(py(s.v[i])) << ' ';
        }
        sink << "\"/>\n";
    }

    // legend
    sink << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t si = 0; si < series.size(); ++si) {
        const int y = top + 14 + 16 * static_cast<int>(si);
        sink << "<line x1=\"" << left + pw - 130 << "\" y1=\"" << y - 4
             << "\" x2=\"" << left + pw - 110 << "\" y2=\"" << y - 4
             << "\" stroke=\"" << palette[si % (sizeof palette / sizeof *palette)]
             << "\" stroke-width=\"2\"/>\n";
        sink << "<text x=\"" << left + pw - 104 << "\" y=\"" << y << "\">"
             << xml_escape(series[si].label) << "</text>\n";
    }
    sink << "</g>\n</svg>\n";
    if (!sink) throw IoError("failed writing SVG");
}

} // namespace ecgsep
