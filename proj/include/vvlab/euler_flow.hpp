#pragma once

#include <string>
#include <vector>

#include "vvlab/euler_trace.hpp"
#include "vvlab/field.hpp"

namespace vvlab {

/// Euler velocity sampled on a grid together with the derivatives the energy
/// breakdown needs.
struct EulerSnapshot {
    double t = 0.0;
    VelocityField u;
    ScalarField d1_u1, d2_u1, d1_u2, d2_u2;
    ScalarField lap_u1, lap_u2;

    explicit EulerSnapshot(const Grid& grid)
        : u(grid), d1_u1(grid), d2_u1(grid), d1_u2(grid), d2_u2(grid), lap_u1(grid), lap_u2(grid) {}
};

enum class EulerFlowKind { rest, uniform, cellular, perturbed_shear };

/// Analytic Euler flows on the periodic strip, each a finite sum of
/// streamfunction modes
///   psi = a g(t) cos(k x1) S(x2),  S = sin(q x2)/q  (S = x2 when q = 0),
/// with u1 = d2 psi, u2 = -d1 psi. Every variant is a steady solution of the
/// Euler equations (all modes share one Laplacian eigenvalue) except for the
/// time modulation, which exists to exercise time-dependent traces.
class EulerFlow {
public:
    static EulerFlow rest();
    static EulerFlow uniform(double U0);
    /// psi = (A/q) cos(k x1) sin(q x2) g(t); wall trace A cos(k x1) g(t).
    static EulerFlow cellular(double A, int k, double q, TimeModulation modulation = TimeModulation::steady);
    /// psi = U0 sin(kappa x2)/kappa + (A/q) cos(m x1) sin(q x2), q = pi/height,
    /// kappa^2 = m^2 + q^2; wall trace U0 + A cos(m x1).
    static EulerFlow perturbed_shear(double U0, double A, int m, double height);
    /// The height on which the perturbed shear has psi = omega = 0 at the top:
    /// kappa * height = 2 pi, i.e. height = pi sqrt(3)/m.
    static double perturbed_shear_height(int m);

    EulerFlowKind kind() const noexcept { return kind_; }
    const EulerTrace& trace() const noexcept { return trace_; }
    std::string describe() const;

    double psi(double x1, double x2, double t) const;
    double u1(double x1, double x2, double t) const;
    double u2(double x1, double x2, double t) const;
    double omega(double x1, double x2, double t) const;

    EulerSnapshot sample(const Grid& grid, double t) const;
    VelocityField velocity(const Grid& grid, double t) const;
    ScalarField vorticity_field(const Grid& grid, double t) const;
    ScalarField streamfunction(const Grid& grid, double t) const;

private:
    struct Mode {
        double a;
        int k;
        double q;
        TimeModulation modulation;
    };
    double g(const Mode& m, double t) const;

    EulerFlowKind kind_ = EulerFlowKind::rest;
    std::vector<Mode> modes_;
    EulerTrace trace_;
    std::string label_ = "rest";
};

/// The exact Navier-Stokes shear u1 = U0 erf(x2/sqrt(4 nu t)), u2 = 0, whose
/// matching Euler flow is the uniform stream U0.
struct AnalyticShear {
    double U0 = 1.0;
    double nu = 1e-3;

    AnalyticShear(double U0_, double nu_);

    double u1(double x2, double t) const;
    /// omega = d2 u1 = U0 exp(-z^2)/sqrt(pi nu t).
    double omega(double x2, double t) const;
    double wall_vorticity(double t) const { return omega(0.0, t); }

    VelocityField velocity(const Grid& grid, double t) const;
    ScalarField vorticity_field(const Grid& grid, double t) const;
    EulerFlow euler() const { return EulerFlow::uniform(U0); }
};

}  // namespace vvlab
