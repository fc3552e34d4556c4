#pragma once

#include <string>
#include <vector>

#include "ekd/grid.hpp"

namespace ekd {

/// Deterministic SVG heatmap of a scalar field on a rectangular 2-D grid,
/// with a color-scale legend and optional design-point markers. Throws
/// std::invalid_argument when the points do not form a full rectangular
/// grid.
std::string render_heatmap_svg(const std::vector<Point>& pts, const std::vector<double>& values,
                               const std::vector<Point>* markers = nullptr);

}  // namespace ekd
