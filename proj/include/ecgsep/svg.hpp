#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ecgsep {

struct PlotSeries {
    std::string label;
    std::vector<double> t;
    std::vector<double> v;
};

// Standalone SVG line plot: shared axes with tick labels, one polyline
// per series, legend. Dense series are decimated per pixel column
// (min/max pair) so pulse extremes survive. Throws ConfigError for an
// empty plot or mismatched t/v lengths, IoError on stream failure.
void write_svg_plot(std::span<const PlotSeries> series, std::ostream& sink,
                    int width = 1000, int height = 420);

} // namespace ecgsep
