#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vvlab/config.hpp"
#include "vvlab/criteria.hpp"
#include "vvlab/diagnostics.hpp"
#include "vvlab/euler_flow.hpp"
#include "vvlab/rate_fit.hpp"
#include "vvlab/solver.hpp"

namespace vvlab {

/// Time integrals of |inner|, |outer| and the outer bound of the Gaussian T6
/// part split at rho.
struct T6Summary {
    double rho = 0.0;
    double inner = 0.0;
    double outer = 0.0;
    double outer_bound = 0.0;
};

/// Everything measured for one viscosity.
struct NuResult {
    double nu = 0.0;
    bool ok = false;
    /// Why the point was quarantined (empty when ok).
    std::string error;

    int nx = 0;
    int ny = 0;
    double height = 0.0;
    double first_cell = 0.0;
    double grading = 1.0;
    /// Largest corrector magnitude on the truncation height over the samples:
    /// what the strip cuts off from the half-space layer.
    double truncation_tail = 0.0;
    RunStats solver;

    std::vector<EnergyBreakdown> energy;
    double identity_max = 0.0;
    double sup_v_l2 = 0.0;
    double sup_diff_l2 = 0.0;
    CriteriaReport criteria;
    std::vector<AssumptionRow> assumptions;
    WangReport wang;
    T6Summary t6;
};

struct NamedFit {
    std::string name;
    RateFit fit;
};

struct Report {
    SweepConfig config;
    /// In nu_list order, quarantined points included.
    std::vector<NuResult> results;
    /// Fits against nu over the points that succeeded.
    std::vector<NamedFit> fits;
    /// Realized corrector constant C_eta of the bump.
    double c_eta = 0.0;
};

/// The Euler flow a scenario is measured against.
EulerFlow euler_reference(const SweepConfig& config);

/// The exact shear u1 = U0 erf(x2/sqrt(4 nu t)) packaged as a snapshot, with
/// psi = int_0^x2 u1 and the exact vorticity.
Snapshot analytic_shear_snapshot(double U0, double nu, const Grid& grid, double t);

/// Navier-Stokes snapshots at the configured sample times: played back for
/// shear_analytic, solved for the numeric scenarios, loaded for replay.
/// `stats` receives the solver statistics when a solver ran.
std::vector<Snapshot> flow_trajectory(const SweepConfig& config, double nu, RunStats* stats = nullptr);

/// Directory a snapshot of the given sweep point lives in, relative to a root.
std::string snapshot_subdir(double nu, int sample_index);

/// Diagnostics for one nu; never throws: failures are reported in `error`.
NuResult run_nu(const SweepConfig& config, double nu);

/// Runs every nu of the config on `jobs` worker threads (each owns its
/// solver) and fits the rates. The result does not depend on `jobs`.
Report run_sweep(const SweepConfig& config, int jobs = 1);

/// (nu, value) pairs of one reported functional over the points that succeeded.
struct FitSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};
std::vector<FitSeries> fit_series(const std::vector<NuResult>& results, const std::vector<double>& rho_list);

/// Fit of one series; fewer than 3 points declines with an explicit status.
RateFit fit_series_rate(const FitSeries& series);

/// Fits of every reported functional against nu.
std::vector<NamedFit> fit_all(const std::vector<NuResult>& results, const std::vector<double>& rho_list);

}  // namespace vvlab
