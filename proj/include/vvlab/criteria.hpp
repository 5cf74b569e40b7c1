#pragma once

#include <limits>
#include <vector>

#include "vvlab/corrector.hpp"
#include "vvlab/euler_trace.hpp"
#include "vvlab/solver.hpp"

namespace vvlab {

/// A time-integrated functional together with how well its layer was resolved.
struct Functional {
    double value = 0.0;
    /// Smallest layer thickness over the sample times, in grid cells.
    double min_layer_cells = std::numeric_limits<double>::infinity();
    /// Some layer had fewer than kMinLayerCells cells.
    bool under_resolved = false;
    /// Some layer was cut off at the top of the domain.
    bool clipped = false;
};

inline constexpr double kMinLayerCells = 4.0;

/// Trapezoid rule on (possibly nonuniform) sample times.
double time_trapezoid(const std::vector<double>& t, const std::vector<double>& values);

/// Every functional below integrates over the times of the given snapshots
/// (the caller restricts them to [t_min, T]) by the trapezoid rule.

/// nu int dt int_{x2 <= C nu} |grad u|^2.
Functional kato_functional(const std::vector<Snapshot>& traj, double nu, double C);
/// nu^-1 int dt int_{x2 <= C nu} |u|^2.
Functional kelliher_functional(const std::vector<Snapshot>& traj, double nu, double C);
/// nu int dt int_{x2 <= delta} |d1 u|^2, delta = nu^b.
Functional temam_wang_functional(const std::vector<Snapshot>& traj, double nu, double b);
/// int dt nu int |omega(x1, 0, t)| dx1.
Functional bt_boundary_vorticity(const std::vector<Snapshot>& traj, double nu);
/// int dt || (U (omega + delta(nu t)/(nu t)))_- ||^2 over x2 <= nu t/delta(nu t).
/// A layer thinner than the first cell uses the wall value across the layer.
Functional ckv_functional(const std::vector<Snapshot>& traj, const EulerTrace& trace, const CorrectorScale& scale,
                          double nu);

struct CriteriaReport {
    Functional kato;
    Functional kelliher;
    Functional temam_wang;
    Functional bt;
    Functional ckv;
};

/// Layer moduli at one rho.
struct AssumptionRow {
    double rho = 0.0;
    double E = 0.0;        // int dt || u1 u2 ||_{L1_x1 Linf_x2(x2 <= rho)}
    double I = 0.0;        // int dt || d1 u1 ||^2_{L1(x2 <= rho)}
    double B = 0.0;        // int dt || u1 ||^2_{Linf(x2 <= rho)}
    double I_mixed = 0.0;  // L2_x1 L1_x2 version of I
    double B_mixed = 0.0;  // L2_x1 Linf_x2 version of B
    /// rho in wall cells; below 1 the layer sits inside the first cell.
    double cells = 0.0;
    bool under_resolved = false;
};
AssumptionRow assumption_row(const std::vector<Snapshot>& traj, double rho);

struct WangReport {
    /// int (nu/delta(nu t) + delta(nu t)/t^(1+c)) dt, delta(s) = s^a, on the sample times.
    double wang_integral = 0.0;
    /// int || u1 u2 ||_{Linf(x2 <= delta(nu t) sqrt(log(1/nu)))} dt.
    Functional layer_sup;
};
/// Throws unless 0 < a < 1, c > 0 and 0 < nu < 1.
WangReport wang_functionals(const std::vector<Snapshot>& traj, double nu, double a, double c);
/// The same Wang integral on arbitrary sample times (no fields needed).
double wang_integral(const std::vector<double>& times, double nu, double a, double c);

}  // namespace vvlab
