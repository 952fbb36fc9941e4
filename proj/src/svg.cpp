#include "liegrowth/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "liegrowth/errors.hpp"

namespace liegrowth {

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 520;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
constexpr int kPlotW = kWidth - kLeft - kRight;
constexpr int kPlotH = kHeight - kTop - kBottom;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string num(double v) {
    char buf[40];
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
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_svg_lines(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<SvgSeries>& series, bool log_y) {
    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = std::numeric_limits<double>::max(), ymax = -ymin;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            if (log_y && y <= 0) continue;
            double yy = log_y ? std::log10(y) : y;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, yy);
            ymax = std::max(ymax, yy);
        }
    if (xmin > xmax) throw ValidationError("svg chart needs at least one drawable point");
    if (xmax - xmin < 1e-12) xmax = xmin + 1;
    if (ymax - ymin < 1e-12) ymax = ymin + 1;

    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * kPlotW; };
    auto py = [&](double y) {
        double yy = log_y ? std::log10(y) : y;
        return kTop + kPlotH - (yy - ymin) / (ymax - ymin) * kPlotH;
    };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw StageError("plot", "cannot open " + path + " for writing",
                               "check the output directory");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"monospace\" font-size=\"16\">" << escape(title)
        << "</text>\n";

    // Grid and tick labels: five divisions per axis.
    for (int i = 0; i <= 5; ++i) {
        double fx = xmin + (xmax - xmin) * i / 5.0;
        double gx = kLeft + kPlotW * i / 5.0;
        double fy = ymin + (ymax - ymin) * i / 5.0;
        double gy = kTop + kPlotH - kPlotH * i / 5.0;
        out << "<line x1=\"" << num(gx) << "\" y1=\"" << kTop << "\" x2=\"" << num(gx)
            << "\" y2=\"" << kTop + kPlotH << "\" stroke=\"#dddddd\"/>\n";
        out << "<line x1=\"" << kLeft << "\" y1=\"" << num(gy) << "\" x2=\""
            << kLeft + kPlotW << "\" y2=\"" << num(gy) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << num(gx) << "\" y=\"" << kTop + kPlotH + 18
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
            << num(fx) << "</text>\n";
        out << "<text x=\"" << kLeft - 6 << "\" y=\"" << num(gy + 4)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
            << (log_y ? "1e" + num(fy) : num(fy)) << "</text>\n";
    }
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kPlotW
        << "\" height=\"" << kPlotH << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    out << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">"
        << escape(x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << kTop + kPlotH / 2
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << kTop + kPlotH / 2 << ")\">"
        << escape(y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % kPaletteSize];
        std::string pts;
        for (auto [x, y] : series[si].points) {
            if (log_y && y <= 0) continue;
            if (!pts.empty()) pts += ' ';
            pts += num(px(x)) + "," + num(py(y));
        }
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
        double ly = kTop + 14 + 16 * static_cast<double>(si);
        out << "<line x1=\"" << kLeft + kPlotW - 150 << "\" y1=\"" << num(ly - 4)
            << "\" x2=\"" << kLeft + kPlotW - 130 << "\" y2=\"" << num(ly - 4)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kLeft + kPlotW - 124 << "\" y=\"" << num(ly)
            << "\" font-family=\"monospace\" font-size=\"12\">"
            << escape(series[si].label) << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw StageError("plot", "failed writing " + path, "check disk space");
}

}  // namespace liegrowth
