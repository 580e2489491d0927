#pragma once

#include <string>
#include <utility>
#include <vector>

namespace crt {

struct SvgSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;  // sorted by x
};

// Self-contained SVG line chart (axes, ticks, legend). Step=true draws
// staircase segments, the natural shape for CDFs.
std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series,
                           bool step = false);

}  // namespace crt
