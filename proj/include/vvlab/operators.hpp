#pragma once

#include <array>
#include <span>
#include <vector>

#include "vvlab/field.hpp"

namespace vvlab {

/// Finite-difference weights (Fornberg) for the derivative of order `order`
/// at `x0` from samples at `nodes`.
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

/// Precomputed three-point weights for d/dx2 at every row of a grid:
/// central (nonuniform) in the interior, one-sided second order at the ends.
struct X2Stencil {
    std::vector<std::array<double, 3>> w;
    std::vector<int> first;  // index of the first node the weights apply to
};
X2Stencil x2_first_derivative_stencil(const Grid& grid);
/// Second derivative: three points inside, four-point one-sided at the ends.
struct X2Stencil4 {
    std::vector<std::array<double, 4>> w;
    std::vector<int> first;
    std::vector<int> count;
};
X2Stencil4 x2_second_derivative_stencil(const Grid& grid);

/// Periodic central difference in x1.
ScalarField d1(const ScalarField& f);
/// Second-order difference in x2 (nonuniform grids supported).
ScalarField d2(const ScalarField& f);
ScalarField d11(const ScalarField& f);
ScalarField d22(const ScalarField& f);

/// Gradient as a collocated vector (d1 f, d2 f).
VelocityField gradient(const ScalarField& f);
ScalarField divergence(const VelocityField& v);
/// omega = d2 u1 - d1 u2.
ScalarField vorticity(const VelocityField& v);
/// |grad u1|^2 + |grad u2|^2 pointwise.
ScalarField grad_squared(const VelocityField& v);

}  // namespace vvlab
