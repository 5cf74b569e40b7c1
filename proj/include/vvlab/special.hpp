#pragma once

#include <numbers>

namespace vvlab {

inline constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

/// Complementary error function. Backed by the C library's erfc, which is
/// correctly rounded to within a few ulp on the whole real line.
double erfc_eval(double z);
double erf_eval(double z);

/// G(z) = z erfc(z) - exp(-z^2)/sqrt(pi) + 1/sqrt(pi), the antiderivative of
/// erfc with G(0) = 0 and G(inf) = 1/sqrt(pi).
double erfc_antiderivative(double z);

/// U0 erf(x2 / sqrt(4 nu t)): the impulsively started flow over a wall.
double shear_exact(double U0, double nu, double x2, double t);

}  // namespace vvlab
