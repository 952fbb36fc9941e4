#pragma once

#include <string>
#include <utility>
#include <vector>

namespace liegrowth {

// One polyline on a chart.
struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y), already sorted by x
};

// Writes a fixed-size (800x520) line chart.  Output is a pure function of the
// inputs (fixed palette, fixed tick layout, %.6g number formatting, no
// timestamps), so reruns are byte-identical.  With log_y the y axis is
// log10-scaled; points with y <= 0 are dropped from the drawing.
void write_svg_lines(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series, bool log_y);

}  // namespace liegrowth
