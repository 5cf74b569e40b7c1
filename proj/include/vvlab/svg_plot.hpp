#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vvlab/rate_fit.hpp"

namespace vvlab {

/// Log-log plot of (x, value) points with the fitted power law drawn across
/// the x range. Non-positive values are skipped; a fit that is not ok is not
/// drawn. Output is deterministic text.
std::string loglog_svg(const std::string& title, const std::vector<std::pair<double, double>>& points,
                       const RateFit& fit);

}  // namespace vvlab
