#pragma once

#include <limits>
#include <vector>

#include "vvlab/field.hpp"

namespace vvlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Position of a layer boundary x2 = rho relative to the grid rows:
/// x2_last <= rho, and rho sits `fraction` of the way into the next cell.
struct LayerCut {
    double rho = 0.0;
    int last = 0;
    double fraction = 0.0;

    /// Layer thickness in units of grid cells (fractional).
    double cells() const noexcept { return last + fraction; }
    bool partial() const noexcept { return fraction > 0.0; }
};

/// Locates rho on the grid; rho is clipped to [0, height_x2].
LayerCut layer_cut(const Grid& grid, double rho);

/// Rectangle rule in x1, trapezoid in x2.
double integrate(const ScalarField& f);

/// Integral over 0 <= x2 <= rho with a linear sub-cell piece at rho.
double integrate_below(const ScalarField& f, double rho);
/// Integral over rho <= x2 <= height; integrate_below + integrate_above == integrate.
double integrate_above(const ScalarField& f, double rho);

/// (integral |f|^p)^(1/p); p = kInf gives max |f|.
double lp_norm(const ScalarField& f, double p);

/// Mixed norm L^{p_x1}_{x1} L^{p_x2}_{x2}(0 < x2 < rho): the x2 norm over the
/// layer is taken first, column by column, then the x1 norm of the result.
double layer_norm(const ScalarField& f, double rho, double p_x1, double p_x2);

/// The inner L^{p_x2}(0 < x2 < rho) norm for every column i.
std::vector<double> column_layer_norms(const ScalarField& f, double rho, double p_x2);

/// L^p norm of a sequence sampled on the periodic x1 nodes (rectangle rule).
double x1_norm(const std::vector<double>& values, double h1, double p);

}  // namespace vvlab
