#pragma once

#include "billiards/configuration.hpp"

#include <optional>
#include <string>
#include <vector>

namespace billiards {

// Standalone SVG: points as dots, faint circles for ring metadata, the
// trajectory (if any) as a polyline with an arrowhead on its last segment
// and 1-based visit-order labels. Viewport is fitted to the points with a
// 5% margin. Throws if a trajectory index does not reference the
// configuration.
std::string render_svg(const Configuration& config,
                       const std::optional<std::vector<int>>& trajectory = std::nullopt);

}  // namespace billiards
