#include "purimetry/svg.hpp"

#include "purimetry/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace purimetry {

namespace {

const char* kStrokes[] = {"#1f6fb5", "#c03a2b", "#2e8b57", "#8953a8", "#b8860b", "#444444"};

std::string fmt(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

int column_index(const CsvTable& table, const std::string& name) {
    for (size_t i = 0; i < table.columns.size(); ++i)
        if (table.columns[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("emit_svg: no column named '" + name + "'");
}

}  // namespace

std::string emit_svg(const CsvTable& table, const std::string& x_column,
                     const std::vector<std::string>& y_columns, const SvgOptions& options) {
    if (y_columns.empty()) throw std::invalid_argument("emit_svg: no y columns requested");
    const int ix = column_index(table, x_column);
    std::vector<int> iy;
    for (const std::string& name : y_columns) iy.push_back(column_index(table, name));

    const auto usable = [&](double v, bool log_axis) {
        return std::isfinite(v) && (!log_axis || v > 0.0);
    };
    const auto to_axis = [&](double v, bool log_axis) { return log_axis ? std::log10(v) : v; };

    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& row : table.rows) {
        if (!usable(row[ix], options.log_x)) continue;
        const double x = to_axis(row[ix], options.log_x);
        for (int column : iy) {
            if (!usable(row[column], options.log_y)) continue;
            const double y = to_axis(row[column], options.log_y);
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    if (!(x_lo <= x_hi) || !(y_lo <= y_hi))
        throw std::invalid_argument("emit_svg: no plottable points");
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;

    const double margin = 56.0;
    const double plot_w = options.width - 2.0 * margin;
    const double plot_h = options.height - 2.0 * margin;
    const auto px = [&](double x) { return margin + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto py = [&](double y) { return options.height - margin - (y - y_lo) / (y_hi - y_lo) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
           std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + fmt(margin) + "\" y=\"" + fmt(margin) + "\" width=\"" + fmt(plot_w) +
           "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";

    // axis range labels
    const auto axis_label = [&](double v, bool log_axis) {
        return log_axis ? "1e" + fmt(v) : fmt(v);
    };
    svg += "<text x=\"" + fmt(margin) + "\" y=\"" + fmt(options.height - margin + 18.0) +
           "\" font-size=\"12\">" + axis_label(x_lo, options.log_x) + "</text>\n";
    svg += "<text x=\"" + fmt(options.width - margin) + "\" y=\"" +
           fmt(options.height - margin + 18.0) + "\" font-size=\"12\" text-anchor=\"end\">" +
           axis_label(x_hi, options.log_x) + "</text>\n";
    svg += "<text x=\"" + fmt(margin - 6.0) + "\" y=\"" + fmt(options.height - margin) +
           "\" font-size=\"12\" text-anchor=\"end\">" + axis_label(y_lo, options.log_y) +
           "</text>\n";
    svg += "<text x=\"" + fmt(margin - 6.0) + "\" y=\"" + fmt(margin + 4.0) +
           "\" font-size=\"12\" text-anchor=\"end\">" + axis_label(y_hi, options.log_y) +
           "</text>\n";
    svg += "<text x=\"" + fmt(margin + 0.5 * plot_w) + "\" y=\"" +
           fmt(options.height - margin + 34.0) + "\" font-size=\"13\" text-anchor=\"middle\">" +
           x_column + "</text>\n";

    for (size_t series = 0; series < iy.size(); ++series) {
        const char* stroke = kStrokes[series % (sizeof(kStrokes) / sizeof(kStrokes[0]))];
        std::string points;
        for (const auto& row : table.rows) {
            if (!usable(row[ix], options.log_x) || !usable(row[iy[series]], options.log_y))
                continue;
            points += fmt(px(to_axis(row[ix], options.log_x))) + "," +
                      fmt(py(to_axis(row[iy[series]], options.log_y))) + " ";
        }
        if (!points.empty()) points.pop_back();
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        svg += "<text x=\"" + fmt(margin + 8.0) + "\" y=\"" +
               fmt(margin + 16.0 + 16.0 * static_cast<double>(series)) +
               "\" font-size=\"12\" fill=\"" + stroke + "\">" + y_columns[series] + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace purimetry
