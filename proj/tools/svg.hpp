#pragma once

#include <string>
#include <vector>

namespace xycorr::cli {

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Writes a self-contained SVG line plot: axes, tick labels, legend, one
/// polyline per series. No external assets.
void write_svg_panel(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series);

}  // namespace xycorr::cli
