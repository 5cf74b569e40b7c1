#include "vvlab/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace vvlab {

std::string to_string(FitStatus s) {
    switch (s) {
        case FitStatus::ok: return "ok";
        case FitStatus::identically_zero: return "identically zero";
        case FitStatus::too_few_points: return "too few nonzero points";
    }
    return "unknown";
}

double RateFit::prefactor() const { return std::exp(log_prefactor); }

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) {
        throw std::invalid_argument(fmt::format("rate fit needs at least 3 points, got {}", points.size()));
    }
    RateFit fit;
    std::vector<double> xs, ys;
    for (const auto& [x, v] : points) {
        if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(fmt::format("rate fit abscissa must be positive, got {}", x));
        if (!std::isfinite(v)) throw std::invalid_argument("rate fit value is not finite");
        if (v > 0.0) {
            xs.push_back(std::log(x));
            ys.push_back(std::log(v));
        } else {
            ++fit.points_excluded;
        }
    }
    fit.points_used = static_cast<int>(xs.size());
    if (xs.empty()) {
        fit.status = FitStatus::identically_zero;
        return fit;
    }
    if (xs.size() < 3) {
        fit.status = FitStatus::too_few_points;
        return fit;
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double dx = xs[k] - mx;
        const double dy = ys[k] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("rate fit needs at least two distinct abscissae");
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    // Perfectly constant data is a perfect (flat) fit.
    fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace vvlab
