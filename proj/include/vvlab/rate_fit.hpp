#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vvlab {

enum class FitStatus { ok, identically_zero, too_few_points };
std::string to_string(FitStatus s);

/// value ~ exp(log_prefactor) * x^exponent, fitted by least squares in log-log.
struct RateFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
    /// Points dropped because their value was zero (or not positive).
    int points_excluded = 0;
    FitStatus status = FitStatus::ok;

    bool ok() const noexcept { return status == FitStatus::ok; }
    double prefactor() const;
};

/// Fits (x, value) pairs with x > 0. Non-positive values are excluded and
/// counted; fewer than 3 input points is an error, fewer than 3 usable points
/// declines the fit with an explicit status.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

}  // namespace vvlab
