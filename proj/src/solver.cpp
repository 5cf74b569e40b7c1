#include "vvlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "vvlab/euler_flow.hpp"
#include "vvlab/operators.hpp"
#include "vvlab/snapshot.hpp"

namespace vvlab {
namespace {

double log_cosh(double x) {
    const double a = std::abs(x);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double mean_of(std::span<const double> row) {
    double s = 0.0;
    for (double v : row) s += v;
    return s / static_cast<double>(row.size());
}

void velocity_from_streamfunction(const ScalarField& psi, VelocityField& u) {
    u.u1 = d2(psi);
    u.u2 = d1(psi);
    for (double& v : u.u2.values()) v = -v;
}

}  // namespace

std::string to_string(InitialKind k) {
    switch (k) {
        case InitialKind::shear: return "shear";
        case InitialKind::perturbed_shear: return "perturbed_shear";
        case InitialKind::vortex_sheet_smoothed: return "vortex_sheet_smoothed";
        case InitialKind::from_snapshot: return "from_snapshot";
    }
    return "unknown";
}

InitialKind initial_kind_from_string(const std::string& name) {
    for (auto k : {InitialKind::shear, InitialKind::perturbed_shear, InitialKind::vortex_sheet_smoothed,
                   InitialKind::from_snapshot}) {
        if (to_string(k) == name) return k;
    }
    throw std::invalid_argument(fmt::format(
        "unknown initial condition '{}' (shear|perturbed_shear|vortex_sheet_smoothed|from_snapshot)", name));
}

InitialCondition InitialCondition::shear(double U0) {
    InitialCondition ic;
    ic.kind = InitialKind::shear;
    ic.U0 = U0;
    return ic;
}

InitialCondition InitialCondition::perturbed_shear(double U0, double amplitude, int mode) {
    InitialCondition ic;
    ic.kind = InitialKind::perturbed_shear;
    ic.U0 = U0;
    ic.amplitude = amplitude;
    ic.mode = mode;
    return ic;
}

InitialCondition InitialCondition::vortex_sheet_smoothed(double U0, double height, double thickness,
                                                         double amplitude, int mode) {
    InitialCondition ic;
    ic.kind = InitialKind::vortex_sheet_smoothed;
    ic.U0 = U0;
    ic.sheet_height = height;
    ic.sheet_thickness = thickness;
    ic.amplitude = amplitude;
    ic.mode = mode;
    return ic;
}

InitialCondition InitialCondition::from_snapshot(std::filesystem::path dir) {
    InitialCondition ic;
    ic.kind = InitialKind::from_snapshot;
    ic.snapshot = std::move(dir);
    return ic;
}

void SolverConfig::validate() const {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::invalid_argument(fmt::format("solver needs nu >= 0, got {}", nu));
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument(fmt::format("cfl must be in (0, 1], got {}", cfl));
    if (!(diffusion_safety > 0.0 && diffusion_safety <= 0.3)) {
        throw std::invalid_argument(fmt::format("diffusion_safety must be in (0, 0.3], got {}", diffusion_safety));
    }
    if (!(t_end > 0.0)) throw std::invalid_argument(fmt::format("t_end must be positive, got {}", t_end));
    for (std::size_t k = 0; k < sample_times.size(); ++k) {
        const double t = sample_times[k];
        if (!(t >= 0.0 && t <= t_end)) {
            throw std::invalid_argument(fmt::format("sample time {} outside [0, t_end={}]", t, t_end));
        }
        if (k > 0 && !(t > sample_times[k - 1])) throw std::invalid_argument("sample times must be strictly increasing");
    }
    if (initial.kind == InitialKind::perturbed_shear && initial.mode < 1) {
        throw std::invalid_argument("perturbed_shear needs mode >= 1");
    }
    if (initial.kind == InitialKind::vortex_sheet_smoothed && !(initial.sheet_thickness > 0.0)) {
        throw std::invalid_argument("vortex sheet thickness must be positive");
    }
}

VorticitySolver::VorticitySolver(SolverConfig config) : config_(std::move(config)) {
    config_.validate();
    const Grid& g = config_.grid;
    poisson_ = std::make_unique<PoissonSolver>(g);
    const int ny = g.ny();
    lap_lo_.assign(ny, 0.0);
    lap_di_.assign(ny, 0.0);
    lap_up_.assign(ny, 0.0);
    metric_.assign(ny, 0.0);
    for (int j = 1; j + 1 < ny; ++j) {
        const double hm = g.cell(j - 1);
        const double hp = g.cell(j);
        const double w = 0.5 * (hm + hp);
        lap_lo_[j] = 1.0 / (hm * w);
        lap_up_[j] = 1.0 / (hp * w);
        lap_di_[j] = -(lap_lo_[j] + lap_up_[j]);
        metric_[j] = w;
    }
}

VorticitySolver::~VorticitySolver() = default;

void VorticitySolver::complete(SolverState& s) {
    const Grid& g = config_.grid;
    poisson_->solve(s.omega, s.flux, s.psi);
    if (!euler()) {
        const int ny = g.ny();
        const double h0 = g.cell(0);
        // Thom: psi_wall = 0 and u1 = d2 psi = 0 give omega_wall = 2 psi_1 / h0^2.
        for (int i = 0; i < g.nx(); ++i) s.omega(i, 0) = 2.0 * s.psi(i, 1) / (h0 * h0);
        if (g.top_bc() == TopBoundary::free_slip) {
            for (double& v : s.omega.row(ny - 1)) v = 0.0;
        } else {
            const double ht = g.cell(ny - 2);
            for (int i = 0; i < g.nx(); ++i) s.omega(i, ny - 1) = 2.0 * (s.psi(i, ny - 2) - s.flux) / (ht * ht);
        }
    }
    velocity_from_streamfunction(s.psi, s.u);
    if (!euler()) {
        for (double& v : s.u.u1.row(0)) v = 0.0;
        if (g.top_bc() == TopBoundary::no_slip) {
            for (double& v : s.u.u1.row(g.ny() - 1)) v = 0.0;
        }
    }
}

SolverState VorticitySolver::initial_state() {
    const Grid& g = config_.grid;
    const InitialCondition& ic = config_.initial;
    SolverState s(g);
    switch (ic.kind) {
        case InitialKind::shear:
            s.flux = ic.U0 * g.height_x2();
            break;
        case InitialKind::perturbed_shear: {
            const auto flow = EulerFlow::perturbed_shear(ic.U0, ic.amplitude, ic.mode, g.height_x2());
            s.omega = flow.vorticity_field(g, 0.0);
            s.flux = flow.psi(0.0, g.height_x2(), 0.0);
            break;
        }
        case InitialKind::vortex_sheet_smoothed: {
            const double eps = ic.sheet_thickness;
            const double y0 = ic.sheet_height;
            s.omega = ScalarField::sample(g, [&](double x1, double x2) {
                const double c = 1.0 / std::cosh((x2 - y0) / eps);
                return ic.U0 / eps * c * c * (1.0 + ic.amplitude * std::cos(ic.mode * x1));
            });
            s.flux = ic.U0 * eps * (log_cosh((g.height_x2() - y0) / eps) - log_cosh(y0 / eps));
            break;
        }
        case InitialKind::from_snapshot: {
            const Snapshot snap = load_snapshot(ic.snapshot);
            if (!(snap.omega.grid() == g)) throw std::invalid_argument("snapshot grid differs from the configured grid");
            s.omega = snap.omega;
            s.flux = snap.flux;
            s.time = snap.t;
            break;
        }
    }
    complete(s);
    require_finite(s);
    return s;
}

double VorticitySolver::stable_dt(const SolverState& s) const {
    const Grid& g = config_.grid;
    const double h1 = g.h1();
    double rate = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
        const double hl = j == 0 ? g.cell(0) : (j == g.ny() - 1 ? g.cell(j - 1) : std::min(g.cell(j - 1), g.cell(j)));
        const auto a = s.u.u1.row(j);
        const auto b = s.u.u2.row(j);
        for (int i = 0; i < g.nx(); ++i) rate = std::max(rate, std::abs(a[i]) / h1 + std::abs(b[i]) / hl);
    }
    double dt = rate > 0.0 ? config_.cfl / rate : std::numeric_limits<double>::infinity();
    if (!euler()) {
        const double h = std::min(h1, g.min_h2());
        dt = std::min(dt, config_.diffusion_safety * h * h / config_.nu);
    }
    if (!std::isfinite(dt)) dt = config_.t_end;
    return dt;
}

VorticitySolver::Rhs VorticitySolver::rhs(const SolverState& s) const {
    const Grid& g = config_.grid;
    const int nx = g.nx();
    const int ny = g.ny();
    const double h1 = g.h1();
    const double nu = config_.nu;
    const ScalarField& w = s.omega;
    const ScalarField& p = s.psi;
    Rhs r{ScalarField(g), 0.0};

    const double inv12h = 1.0 / (12.0 * h1);  // (1/3) * 1/(4 h1)
    const double inv_h1sq = 1.0 / (h1 * h1);
    for (int j = 1; j + 1 < ny; ++j) {
        const auto wm = w.row(j - 1), w0 = w.row(j), wp = w.row(j + 1);
        const auto pm = p.row(j - 1), p0 = p.row(j), pp = p.row(j + 1);
        auto out = r.domega.row(j);
        const double inv_m = 1.0 / metric_[j];
        for (int i = 0; i < nx; ++i) {
            const int ip = i + 1 == nx ? 0 : i + 1;
            const int im = i == 0 ? nx - 1 : i - 1;
            // Arakawa J(psi, omega) = psi_x omega_eta - psi_eta omega_x in index space.
            const double jpp = (p0[ip] - p0[im]) * (wp[i] - wm[i]) - (pp[i] - pm[i]) * (w0[ip] - w0[im]);
            const double jpx = p0[ip] * (wp[ip] - wm[ip]) - p0[im] * (wp[im] - wm[im]) - pp[i] * (wp[ip] - wp[im]) +
                               pm[i] * (wm[ip] - wm[im]);
            const double jxp = wp[i] * (pp[ip] - pp[im]) - wm[i] * (pm[ip] - pm[im]) - w0[ip] * (pp[ip] - pm[ip]) +
                               w0[im] * (pp[im] - pm[im]);
            const double jac = (jpp + jpx + jxp) * inv12h * inv_m;
            double d = jac;  // d_t omega = -u.grad omega = J(psi, omega)
            if (nu > 0.0) {
                const double lap = (w0[ip] - 2.0 * w0[i] + w0[im]) * inv_h1sq + lap_lo_[j] * wm[i] +
                                   lap_di_[j] * w0[i] + lap_up_[j] * wp[i];
                d += nu * lap;
            }
            out[i] = d;
        }
    }
    if (euler()) {
        // Boundary rows carry vorticity along the wall: d_t omega = -u1 d1 omega.
        for (int j : {0, ny - 1}) {
            const auto w0 = w.row(j);
            const auto u1 = s.u.u1.row(j);
            auto out = r.domega.row(j);
            for (int i = 0; i < nx; ++i) {
                const int ip = i + 1 == nx ? 0 : i + 1;
                const int im = i == 0 ? nx - 1 : i - 1;
                out[i] = -u1[i] * (w0[ip] - w0[im]) / (2.0 * h1);
            }
        }
    } else {
        // The mean flux changes only through the wall and top shear stresses.
        r.dflux = nu * (mean_of(w.row(ny - 1)) - mean_of(w.row(0)));
    }
    return r;
}

void VorticitySolver::require_finite(const SolverState& s) const {
    if (!s.omega.all_finite() || !s.psi.all_finite() || !std::isfinite(s.flux)) {
        throw std::runtime_error(fmt::format("non-finite vorticity at t = {:.17g} (nu = {}, grid {}x{}); "
                                             "reduce cfl/diffusion_safety or refine the grid",
                                             s.time, config_.nu, config_.grid.nx(), config_.grid.ny()));
    }
}

SolverState VorticitySolver::step(const SolverState& s, double dt) {
    stats_ = {};
    if (!(dt > 0.0)) throw std::invalid_argument(fmt::format("time step must be positive, got {}", dt));
    const double limit = stable_dt(s);
    if (dt > limit * (1.0 + 1e-12)) {
        dt = limit;
        stats_.dt_clamped = true;
    }
    stats_.dt = dt;

    auto axpy = [](SolverState& out, double a, const SolverState& x, double b, const SolverState& y, double c,
                   const Rhs& k) {
        auto o = out.omega.values();
        const auto xv = x.omega.values();
        const auto yv = y.omega.values();
        const auto kv = k.domega.values();
        for (std::size_t n = 0; n < o.size(); ++n) o[n] = a * xv[n] + b * yv[n] + c * kv[n];
        out.flux = a * x.flux + b * y.flux + c * k.dflux;
    };

    const Rhs k1 = rhs(s);
    SolverState s1(config_.grid);
    axpy(s1, 1.0, s, 0.0, s, dt, k1);
    s1.time = s.time + dt;
    complete(s1);

    const Rhs k2 = rhs(s1);
    SolverState s2(config_.grid);
    axpy(s2, 0.75, s, 0.25, s1, 0.25 * dt, k2);
    s2.time = s.time + 0.5 * dt;
    complete(s2);

    const Rhs k3 = rhs(s2);
    SolverState s3(config_.grid);
    axpy(s3, 1.0 / 3.0, s, 2.0 / 3.0, s2, 2.0 / 3.0 * dt, k3);
    s3.time = s.time + dt;

    // Audit: the Shu-Osher update must equal the Butcher form
    // omega + dt (k1 + k2 + 4 k3)/6 on every evolved node.
    {
        const Grid& g = config_.grid;
        const int j0 = euler() ? 0 : 1;
        const int j1 = euler() ? g.ny() : g.ny() - 1;
        double worst = 0.0;
        double scale = 1.0;
        for (int j = j0; j < j1; ++j) {
            for (int i = 0; i < g.nx(); ++i) {
                const double butcher = s.omega(i, j) + dt * (k1.domega(i, j) + k2.domega(i, j) + 4.0 * k3.domega(i, j)) / 6.0;
                worst = std::max(worst, std::abs(s3.omega(i, j) - butcher));
                scale = std::max(scale, std::abs(butcher));
            }
        }
        stats_.rk_identity_residual = worst / scale;
    }

    complete(s3);
    require_finite(s3);
    return s3;
}

SolverState ns_step(const SolverState& s, const SolverConfig& config) {
    if (!(config.nu > 0.0)) throw std::invalid_argument("ns_step needs nu > 0");
    VorticitySolver solver(config);
    return solver.step(s);
}

SolverState euler_step(const SolverState& s, const SolverConfig& config) {
    if (config.nu != 0.0) throw std::invalid_argument("euler_step needs nu == 0");
    VorticitySolver solver(config);
    return solver.step(s);
}

Trajectory run(const SolverConfig& config) {
    config.validate();
    Trajectory traj;
    if (config.sample_times.empty()) return traj;

    VorticitySolver solver(config);
    SolverState state = solver.initial_state();
    if (config.sample_times.front() < state.time) {
        throw std::invalid_argument(fmt::format("sample time {} precedes the initial time {}",
                                                config.sample_times.front(), state.time));
    }
    RunStats& st = traj.stats;
    st.dt_min = std::numeric_limits<double>::infinity();
    for (double target : config.sample_times) {
        while (state.time < target) {
            const double remaining = target - state.time;
            double dt = solver.stable_dt(state);
            bool last = false;
            if (dt >= remaining) {
                dt = remaining;
                last = true;
            } else if (2.0 * dt > remaining) {
                dt = 0.5 * remaining;  // two even steps instead of a sliver
            }
            state = solver.step(state, dt);
            if (last) state.time = target;
            const StepStats& ss = solver.last_stats();
            ++st.steps;
            st.dt_min = std::min(st.dt_min, ss.dt);
            st.dt_max = std::max(st.dt_max, ss.dt);
            st.max_rk_identity_residual = std::max(st.max_rk_identity_residual, ss.rk_identity_residual);
            if (ss.dt_clamped) ++st.clamped_steps;
        }
        traj.snapshots.emplace_back(state, config.nu);
    }
    if (st.steps == 0) st.dt_min = 0.0;
    return traj;
}

}  // namespace vvlab
