// Self-contained SVG charts (inline styles, no external assets).
#pragma once

#include <string>
#include <vector>

#include "ioopt/ranking.hpp"
#include "ioopt/stability.hpp"

namespace ioopt {

/// One polyline per product. With a collapse, the left panel stops before
/// the collapse step and the right panel shows the whole run on its own
/// (compressed) scale with the collapse step marked.
std::string trajectory_svg(const Trajectory& t, const StabilityReport& report, const std::vector<std::string>& labels);

/// Cumulative distribution over ascending rank, threshold lines and the
/// weak / pillar boundaries.
std::string cdf_svg(const ClassificationReport& c, const std::vector<std::string>& labels);

}  // namespace ioopt
