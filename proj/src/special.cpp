#include "vvlab/special.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace vvlab {

double erfc_eval(double z) {
    if (!std::isfinite(z)) throw std::invalid_argument(fmt::format("erfc argument must be finite, got {}", z));
    return std::erfc(z);
}

double erf_eval(double z) {
    if (!std::isfinite(z)) throw std::invalid_argument(fmt::format("erf argument must be finite, got {}", z));
    return std::erf(z);
}

double erfc_antiderivative(double z) {
    return z * erfc_eval(z) - kInvSqrtPi * std::exp(-z * z) + kInvSqrtPi;
}

double shear_exact(double U0, double nu, double x2, double t) {
    if (!(t > 0.0)) throw std::invalid_argument(fmt::format("shear_exact needs t > 0, got {}", t));
    if (!(nu > 0.0)) throw std::invalid_argument(fmt::format("shear_exact needs nu > 0, got {}", nu));
    return U0 * std::erf(x2 / std::sqrt(4.0 * nu * t));
}

}  // namespace vvlab
