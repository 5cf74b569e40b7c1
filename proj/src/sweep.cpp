#include "vvlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "vvlab/norms.hpp"
#include "vvlab/snapshot.hpp"

namespace vvlab {
namespace {

Scenario flow_scenario(const SweepConfig& c) {
    return c.scenario == Scenario::snapshot_replay ? c.replay_flow : c.scenario;
}

double velocity_l2(const VelocityField& a, const VelocityField& b) {
    const ScalarField d1 = a.u1 - b.u1;
    const ScalarField d2 = a.u2 - b.u2;
    const double n1 = lp_norm(d1, 2.0);
    const double n2 = lp_norm(d2, 2.0);
    return std::sqrt(n1 * n1 + n2 * n2);
}

std::vector<Snapshot> solved_trajectory(const SweepConfig& c, double nu, RunStats* stats) {
    SolverConfig sc;
    sc.nu = nu;
    sc.grid = c.grid_for(nu);
    sc.cfl = c.cfl;
    sc.diffusion_safety = c.diffusion_safety;
    sc.t_end = c.T;
    sc.sample_times = c.sample_times();
    sc.initial = flow_scenario(c) == Scenario::perturbed_shear
                     ? InitialCondition::perturbed_shear(c.U0, c.amplitude, c.mode)
                     : InitialCondition::shear(c.U0);
    Trajectory traj = run(sc);
    if (stats) *stats = traj.stats;
    return std::move(traj.snapshots);
}

std::vector<Snapshot> replayed_trajectory(const SweepConfig& c, double nu) {
    const std::filesystem::path root(c.replay_dir);
    std::vector<Snapshot> out;
    for (int k = 0;; ++k) {
        const auto dir = root / snapshot_subdir(nu, k);
        if (!std::filesystem::exists(dir)) break;
        Snapshot s = load_snapshot(dir);
        if (s.t >= c.t_min * (1.0 - 1e-12) && s.t <= c.T * (1.0 + 1e-12)) out.push_back(std::move(s));
    }
    if (out.empty()) {
        throw std::runtime_error(
            fmt::format("no snapshots for nu = {} under '{}'", nu, (root / snapshot_subdir(nu, 0)).string()));
    }
    return out;
}

}  // namespace

EulerFlow euler_reference(const SweepConfig& c) {
    if (flow_scenario(c) == Scenario::perturbed_shear) {
        return EulerFlow::perturbed_shear(c.U0, c.amplitude, c.mode, c.height());
    }
    return EulerFlow::uniform(c.U0);
}

Snapshot analytic_shear_snapshot(double U0, double nu, const Grid& grid, double t) {
    const AnalyticShear shear(U0, nu);
    const double delta = std::sqrt(4.0 * nu * t);
    ScalarField psi(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        const double x2 = grid.x2(j);
        const double z = x2 / delta;
        // int_0^x2 erf(y/delta) dy = x2 erf(z) - delta (1 - exp(-z^2))/sqrt(pi)
        const double p = U0 * (x2 * std::erf(z) - delta * (1.0 - std::exp(-z * z)) / std::sqrt(std::numbers::pi));
        for (int i = 0; i < grid.nx(); ++i) psi(i, j) = p;
    }
    const double flux = psi(0, grid.ny() - 1);
    return Snapshot(t, nu, flux, shear.vorticity_field(grid, t), std::move(psi), shear.velocity(grid, t));
}

std::string snapshot_subdir(double nu, int sample_index) {
    return fmt::format("nu_{}/t_{:04d}", nu, sample_index);
}

std::vector<Snapshot> flow_trajectory(const SweepConfig& c, double nu, RunStats* stats) {
    switch (c.scenario) {
        case Scenario::shear_analytic: {
            const Grid grid = c.grid_for(nu);
            std::vector<Snapshot> out;
            for (double t : c.sample_times()) out.push_back(analytic_shear_snapshot(c.U0, nu, grid, t));
            return out;
        }
        case Scenario::shear_numeric:
        case Scenario::perturbed_shear: return solved_trajectory(c, nu, stats);
        case Scenario::snapshot_replay: return replayed_trajectory(c, nu);
    }
    throw std::logic_error("unhandled scenario");
}

NuResult run_nu(const SweepConfig& c, double nu) {
    NuResult r;
    r.nu = nu;
    try {
        std::vector<Snapshot> traj = flow_trajectory(c, nu, &r.solver);
        const Grid& grid = traj.front().omega.grid();
        r.nx = grid.nx();
        r.ny = grid.ny();
        r.height = grid.height_x2();
        r.first_cell = grid.h2();
        r.grading = grid.grading();

        const EulerFlow flow = euler_reference(c);
        CorrectorParams params;
        params.nu = nu;
        params.trace = flow.trace();
        params.scale = c.corrector_scale();

        std::vector<double> times, t6_in, t6_out, t6_bound;
        for (const Snapshot& s : traj) {
            const EulerSnapshot uE = flow.sample(grid, s.t);
            const CorrectorField ck = build_corrector(params, grid, s.t);
            for (int i = 0; i < grid.nx(); ++i) {
                r.truncation_tail = std::max({r.truncation_tail, std::abs(ck.u1(i, grid.ny() - 1)),
                                              std::abs(ck.u2(i, grid.ny() - 1))});
            }
            r.energy.push_back(energy_breakdown(s.u, uE, ck, params, s.t));
            r.sup_v_l2 = std::max(r.sup_v_l2, std::sqrt(r.energy.back().v_l2_sq));
            r.sup_diff_l2 = std::max(r.sup_diff_l2, velocity_l2(s.u, uE.u));
            const T6Split split = t6_split(s.u, params.trace, params.scale, nu, s.t, c.t6_rho);
            times.push_back(s.t);
            t6_in.push_back(std::abs(split.inner));
            t6_out.push_back(std::abs(split.outer));
            t6_bound.push_back(split.outer_bound);
        }
        r.identity_max = identity_audit(r.energy);
        r.t6 = {c.t6_rho, time_trapezoid(times, t6_in), time_trapezoid(times, t6_out),
                time_trapezoid(times, t6_bound)};

        r.criteria.kato = kato_functional(traj, nu, c.C);
        r.criteria.kelliher = kelliher_functional(traj, nu, c.C);
        r.criteria.temam_wang = temam_wang_functional(traj, nu, c.temam_wang_b);
        r.criteria.bt = bt_boundary_vorticity(traj, nu);
        r.criteria.ckv = ckv_functional(traj, params.trace, CorrectorScale::power(c.ckv_a), nu);
        for (double rho : c.rho_list) r.assumptions.push_back(assumption_row(traj, rho));
        r.wang = wang_functionals(traj, nu, c.wang_a, c.wang_c);
        r.ok = true;
    } catch (const std::exception& e) {
        NuResult failed;
        failed.nu = nu;
        failed.error = e.what();
        failed.solver = r.solver;
        return failed;
    }
    return r;
}

std::vector<FitSeries> fit_series(const std::vector<NuResult>& results, const std::vector<double>& rho_list) {
    std::vector<FitSeries> out;
    auto add = [&](std::string name, const std::function<double(const NuResult&)>& f) {
        FitSeries series{std::move(name), {}};
        for (const NuResult& r : results) {
            if (r.ok) series.points.emplace_back(r.nu, f(r));
        }
        out.push_back(std::move(series));
    };
    add("sup_diff_l2", [](const NuResult& r) { return r.sup_diff_l2; });
    add("sup_v_l2", [](const NuResult& r) { return r.sup_v_l2; });
    add("kato", [](const NuResult& r) { return r.criteria.kato.value; });
    add("kelliher", [](const NuResult& r) { return r.criteria.kelliher.value; });
    add("temam_wang", [](const NuResult& r) { return r.criteria.temam_wang.value; });
    add("bt", [](const NuResult& r) { return r.criteria.bt.value; });
    add("ckv", [](const NuResult& r) { return r.criteria.ckv.value; });
    add("wang_integral", [](const NuResult& r) { return r.wang.wang_integral; });
    add("layer_sup", [](const NuResult& r) { return r.wang.layer_sup.value; });
    add("t6_inner", [](const NuResult& r) { return r.t6.inner; });
    add("t6_outer", [](const NuResult& r) { return r.t6.outer; });
    for (std::size_t k = 0; k < rho_list.size(); ++k) {
        const std::string tag = fmt::format("(rho={})", rho_list[k]);
        add("E" + tag, [k](const NuResult& r) { return r.assumptions.at(k).E; });
        add("I" + tag, [k](const NuResult& r) { return r.assumptions.at(k).I; });
        add("B" + tag, [k](const NuResult& r) { return r.assumptions.at(k).B; });
    }
    return out;
}

RateFit fit_series_rate(const FitSeries& series) {
    const auto& pts = series.points;
    if (pts.size() >= 3) return fit_rate(pts);
    RateFit fit;
    fit.status = FitStatus::too_few_points;
    bool all_zero = !pts.empty();
    for (const auto& p : pts) {
        if (p.second > 0.0) {
            ++fit.points_used;
            all_zero = false;
        } else {
            ++fit.points_excluded;
        }
    }
    if (all_zero) fit.status = FitStatus::identically_zero;
    return fit;
}

std::vector<NamedFit> fit_all(const std::vector<NuResult>& results, const std::vector<double>& rho_list) {
    std::vector<NamedFit> fits;
    for (const FitSeries& s : fit_series(results, rho_list)) fits.push_back({s.name, fit_series_rate(s)});
    return fits;
}

Report run_sweep(const SweepConfig& config, int jobs) {
    config.validate();
    Report report;
    report.config = config;
    report.c_eta = BumpSpec().c_eta();
    const std::size_t n = config.nu_list.size();
    report.results.resize(n);

    // Each worker owns the solver of the point it runs; results land in
    // fixed slots so the output order never depends on scheduling.
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) report.results[k] = run_nu(config, config.nu_list[k]);
    };
    const int workers = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    report.fits = fit_all(report.results, config.rho_list);
    return report;
}

}  // namespace vvlab
