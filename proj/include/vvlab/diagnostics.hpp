#pragma once

#include <array>
#include <functional>
#include <vector>

#include "vvlab/corrector.hpp"
#include "vvlab/euler_flow.hpp"
#include "vvlab/field.hpp"

namespace vvlab {

/// v = uNS - uE - uK.
VelocityField compute_v(const VelocityField& uNS, const VelocityField& uE, const VelocityField& uK);

/// One row of the energy balance for v:
///   d/dt (||v||^2 / 2) + dissipation = lin_stretch + lin_visc + T1 + ... + T6.
struct EnergyBreakdown {
    double t = 0.0;
    double v_l2_sq = 0.0;
    double dissipation = 0.0;  // nu ||grad v||^2
    double lin_stretch = 0.0;  // -int (v.grad uE).v
    double lin_visc = 0.0;     // nu int Laplacian(uE).v
    std::array<double, 6> T{};  // T[0] = T1, ..., T[5] = T6
    double t6_nu = 0.0;        // Gaussian part of T6
    double identity_residual = 0.0;

    double t_sum() const noexcept;
};

/// Terms by domain quadrature. Euler derivatives come from `uE`, corrector
/// derivatives are the closed forms carried by `ck`; only grad uNS uses
/// difference stencils.
EnergyBreakdown energy_breakdown(const VelocityField& uNS, const EulerSnapshot& uE, const CorrectorField& ck,
                                 const CorrectorParams& params, double t);

/// Euler snapshot from a sampled velocity, with derivatives by the solver's
/// second-order stencils.
EulerSnapshot euler_snapshot_from_velocity(const VelocityField& u, double t);

/// Fills identity_residual of every row, with d/dt ||v||^2 from three-point
/// differences on the (possibly nonuniform) sample times. Returns max |residual|.
double identity_audit(std::vector<EnergyBreakdown>& rows);

/// The Gaussian part of T6,
///   t6_nu = -(2/(sqrt(pi) delta)) int u1 u2 U exp(-x2^2/delta^2),
/// split at x2 = rho. For the Prandtl scale the prefactor is 1/sqrt(pi nu t).
struct T6Split {
    double inner = 0.0;
    double outer = 0.0;
    double full = 0.0;
    /// (2/(sqrt(pi) delta)) exp(-rho^2/delta^2) int_{x2>rho} |u1 u2 U|, an upper bound for |outer|.
    double outer_bound = 0.0;
};
T6Split t6_split(const VelocityField& uNS, const EulerTrace& trace, const CorrectorScale& scale, double nu,
                 double t, double rho);

}  // namespace vvlab
