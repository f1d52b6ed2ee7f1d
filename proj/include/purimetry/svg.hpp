#ifndef PURIMETRY_SVG_HPP
#define PURIMETRY_SVG_HPP

#include "purimetry/scenario.hpp"

#include <string>
#include <vector>

namespace purimetry {

struct SvgOptions {
    bool log_x = false;
    bool log_y = false;
    int width = 720;
    int height = 480;
};

/// Polyline plot of the listed columns against `x_column`. Pure function of
/// its inputs; the output bytes are deterministic. Non-finite points (and
/// non-positive ones on log axes) are skipped.
std::string emit_svg(const CsvTable& table, const std::string& x_column,
                     const std::vector<std::string>& y_columns, const SvgOptions& options = {});

}  // namespace purimetry

#endif
