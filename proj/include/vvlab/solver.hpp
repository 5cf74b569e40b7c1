#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "vvlab/field.hpp"
#include "vvlab/poisson.hpp"

namespace vvlab {

enum class InitialKind { shear, perturbed_shear, vortex_sheet_smoothed, from_snapshot };
std::string to_string(InitialKind k);
InitialKind initial_kind_from_string(const std::string& name);

struct InitialCondition {
    InitialKind kind = InitialKind::shear;
    double U0 = 1.0;
    /// perturbed_shear: amplitude of the cos(m x1) mode; sheet: relative
    /// amplitude of the vorticity modulation.
    double amplitude = 0.1;
    int mode = 1;
    /// Smoothed vortex sheet: u1 = U0 tanh((x2 - height)/thickness) + const.
    double sheet_height = 1.0;
    double sheet_thickness = 0.1;
    std::filesystem::path snapshot;

    static InitialCondition shear(double U0);
    static InitialCondition perturbed_shear(double U0, double amplitude, int mode);
    static InitialCondition vortex_sheet_smoothed(double U0, double height, double thickness, double amplitude,
                                                  int mode);
    static InitialCondition from_snapshot(std::filesystem::path dir);
};

struct SolverConfig {
    /// 0 selects the Euler equations.
    double nu = 0.0;
    Grid grid{64, 128};
    double cfl = 0.4;
    double diffusion_safety = 0.25;
    double t_end = 1.0;
    std::vector<double> sample_times;
    InitialCondition initial;

    void validate() const;
};

/// Vorticity, streamfunction, derived velocity and the mean flux
/// Q = psi(top) - psi(wall) = (1/L1) * integral of u1.
/// Sign conventions: u1 = d2 psi, u2 = -d1 psi, omega = d2 u1 - d1 u2 = Laplacian psi.
struct SolverState {
    ScalarField omega;
    ScalarField psi;
    VelocityField u;
    double flux = 0.0;
    double time = 0.0;

    explicit SolverState(const Grid& grid) : omega(grid), psi(grid), u(grid) {}
};

struct StepStats {
    double dt = 0.0;
    /// max |Shu-Osher result - Butcher-form result| relative to max |omega|.
    double rk_identity_residual = 0.0;
    bool dt_clamped = false;
};

/// Second-order vorticity-streamfunction solver: SSP-RK3 in time, Arakawa
/// Jacobian and three-point diffusion in space, Thom wall vorticity (NS).
class VorticitySolver {
public:
    explicit VorticitySolver(SolverConfig config);
    ~VorticitySolver();

    const SolverConfig& config() const noexcept { return config_; }
    bool euler() const noexcept { return config_.nu == 0.0; }

    SolverState initial_state();
    /// Recomputes psi, boundary vorticity and velocity from interior omega and flux.
    void complete(SolverState& s);

    /// Largest stable step for the state: min of the advective (CFL) and,
    /// for nu > 0, diffusive limits.
    double stable_dt(const SolverState& s) const;

    /// One SSP-RK3 step. dt larger than stable_dt is reduced (reported in stats).
    SolverState step(const SolverState& s, double dt);
    SolverState step(const SolverState& s) { return step(s, stable_dt(s)); }

    const StepStats& last_stats() const noexcept { return stats_; }

private:
    struct Rhs {
        ScalarField domega;
        double dflux;
    };
    Rhs rhs(const SolverState& s) const;
    void require_finite(const SolverState& s) const;

    SolverConfig config_;
    std::unique_ptr<PoissonSolver> poisson_;
    std::vector<double> lap_lo_, lap_di_, lap_up_;  // x2 second-derivative rows
    std::vector<double> metric_;                    // (x_{j+1} - x_{j-1})/2
    StepStats stats_;
};

/// Navier-Stokes step (nu > 0) with the stable time step.
SolverState ns_step(const SolverState& s, const SolverConfig& config);
/// Euler step (nu == 0) with the stable time step.
SolverState euler_step(const SolverState& s, const SolverConfig& config);

struct Snapshot {
    double t = 0.0;
    double nu = 0.0;
    double flux = 0.0;
    ScalarField omega;
    ScalarField psi;
    VelocityField u;

    Snapshot(const SolverState& s, double nu_)
        : t(s.time), nu(nu_), flux(s.flux), omega(s.omega), psi(s.psi), u(s.u) {}
    Snapshot(double t_, double nu_, double flux_, ScalarField omega_, ScalarField psi_, VelocityField u_)
        : t(t_), nu(nu_), flux(flux_), omega(std::move(omega_)), psi(std::move(psi_)), u(std::move(u_)) {}
};

struct RunStats {
    std::int64_t steps = 0;
    double dt_min = 0.0;
    double dt_max = 0.0;
    double max_rk_identity_residual = 0.0;
    std::int64_t clamped_steps = 0;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    RunStats stats;
};

/// Integrates from the initial condition to the last sample time, landing
/// exactly on every sample time. Throws on non-finite values.
Trajectory run(const SolverConfig& config);

}  // namespace vvlab
