// Command-line front end: corrector checks, solver runs, viscosity sweeps,
// single-snapshot diagnostics and report re-rendering.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "vvlab/config.hpp"
#include "vvlab/corrector.hpp"
#include "vvlab/report.hpp"
#include "vvlab/snapshot.hpp"
#include "vvlab/sweep.hpp"

namespace fs = std::filesystem;
using namespace vvlab;

namespace {

SweepConfig config_or_default(const std::string& path) {
    if (path.empty()) {
        SweepConfig c;
        c.nu_list = {1e-2, 1e-3, 1e-4};
        return c;
    }
    return load_config(path);
}

bool report_check(const std::string& name, bool pass, const std::string& detail) {
    fmt::print("{} {}: {}\n", pass ? "PASS" : "FAIL", name, detail);
    return pass;
}

// ============================================================================
// corrector-check
// ============================================================================

int corrector_check(const SweepConfig& cfg) {
    bool all = true;
    const EulerFlow flow = euler_reference(cfg);
    const EulerTrace trace = flow.trace().identically_zero() || flow.trace().kind() == TraceKind::constant
                                 ? EulerTrace::cosine(0.5, 1, TimeModulation::steady, 1.0)
                                 : flow.trace();

    // Wall contract: u1 = -U, u2 = 0.
    {
        CorrectorParams p;
        p.nu = 1e-3;
        p.trace = trace;
        const Grid grid = Grid::with_first_cell(128, 256, cfg.L1, cfg.L2, TopBoundary::free_slip, 1e-4);
        const CorrectorField ck = build_corrector(p, grid, 0.5);
        double e1 = 0.0, e2 = 0.0;
        for (int i = 0; i < grid.nx(); ++i) {
            e1 = std::max(e1, std::abs(ck.u1(i, 0) + trace.value(grid.x1(i), 0.5)));
            e2 = std::max(e2, std::abs(ck.u2(i, 0)));
        }
        all &= report_check("wall contract", e1 <= 1e-12 && e2 <= 1e-12,
                            fmt::format("max|u1 + U| = {:.3e}, max|u2| = {:.3e}", e1, e2));
    }

    // Zero mean of the tangential component.
    {
        std::mt19937_64 rng(20240601);
        std::uniform_real_distribution<double> x1d(0.0, cfg.L1), ltd(std::log(1e-2), std::log(1.0)),
            lnd(std::log(1e-5), std::log(1e-2));
        double worst = 0.0;
        for (ScaleKind kind : {ScaleKind::prandtl, ScaleKind::power}) {
            for (int k = 0; k < 20; ++k) {
                CorrectorParams p;
                p.nu = std::exp(lnd(rng));
                p.trace = trace;
                p.scale = kind == ScaleKind::prandtl ? CorrectorScale::prandtl() : CorrectorScale::power(cfg.a);
                const double t = std::exp(ltd(rng));
                const ZeroMeanResult z = zero_mean_check(p, x1d(rng), t);
                worst = std::max(worst, std::abs(z.residual) / trace.sup_abs(t));
            }
        }
        all &= report_check("zero mean", worst <= 1e-8, fmt::format("max relative |int u1| = {:.3e}", worst));
    }

    // Scaling of the L2 norms.
    {
        CorrectorParams p;
        p.nu = 1e-3;
        p.trace = trace;
        p.scale = cfg.corrector_scale();
        const std::vector<double> s{1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
        for (CorrectorQuantity q : {CorrectorQuantity::u1, CorrectorQuantity::u2}) {
            const ScalingResult r = scaling_exponents(p, 2.0, q, s);
            all &= report_check(fmt::format("scaling {} (p = 2)", to_string(q)), std::abs(r.exponent - r.expected) <= 0.02,
                                fmt::format("exponent {:.4f}, expected {:.4f}", r.exponent, r.expected));
        }
    }

    // Heat residual of the erfc part for a steady constant trace.
    {
        CorrectorParams p;
        p.nu = 1e-3;
        p.trace = EulerTrace::constant(1.0);
        p.include_bump = false;
        const Grid grid = Grid::with_first_cell(16, 256, cfg.L1, cfg.L2, TopBoundary::free_slip, 1e-4);
        const CorrectorField ck = build_corrector(p, grid, 0.5);
        const double r = std::max(ck.heat_residual_1.max_abs(), ck.heat_residual_2.max_abs());
        all &= report_check("erfc heat residual", r <= 1e-10, fmt::format("max residual {:.3e}", r));
    }
    return all ? 0 : 1;
}

// ============================================================================
// solve
// ============================================================================

int solve(const SweepConfig& cfg, const fs::path& out) {
    const std::uint64_t hash = fnv1a64(cfg.emit());
    for (double nu : cfg.nu_list) {
        RunStats stats;
        const std::vector<Snapshot> traj = flow_trajectory(cfg, nu, &stats);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            write_snapshot(out / snapshot_subdir(nu, static_cast<int>(k)), traj[k], hash);
        }
        fmt::print("nu = {}: {} snapshots, {} steps, dt in [{:.3e}, {:.3e}]\n", nu, traj.size(), stats.steps,
                   stats.dt_min, stats.dt_max);
    }
    return 0;
}

// ============================================================================
// sweep / report
// ============================================================================

int emit_and_summarize(const Report& report, const fs::path& out, bool svg) {
    const auto files = emit_outputs(report, out, svg);
    int failed = 0;
    for (const NuResult& r : report.results) {
        if (r.ok) {
            fmt::print("nu = {:<8} sup|u - uE| = {:.4e}  sup|v| = {:.4e}  kato = {:.4e}  audit = {:.3e}\n", r.nu,
                       r.sup_diff_l2, r.sup_v_l2, r.criteria.kato.value, r.identity_max);
        } else {
            ++failed;
            fmt::print("nu = {:<8} QUARANTINED: {}\n", r.nu, r.error);
        }
    }
    for (const NamedFit& f : report.fits) {
        if (f.fit.ok()) fmt::print("fit {:<16} exponent {:.4f}  R2 {:.4f}\n", f.name, f.fit.exponent, f.fit.r_squared);
    }
    fmt::print("wrote {} files to {}\n", files.size(), out.string());
    return failed == 0 ? 0 : 1;
}

// ============================================================================
// diagnose
// ============================================================================

int diagnose(const SweepConfig& cfg, const fs::path& snapshot_dir) {
    const Snapshot s = load_snapshot(snapshot_dir);
    const Grid& grid = s.omega.grid();
    const EulerFlow flow = euler_reference(cfg);
    CorrectorParams p;
    p.nu = s.nu;
    p.trace = flow.trace();
    p.scale = cfg.corrector_scale();
    const EnergyBreakdown e = energy_breakdown(s.u, flow.sample(grid, s.t), build_corrector(p, grid, s.t), p, s.t);
    const T6Split split = t6_split(s.u, p.trace, p.scale, s.nu, s.t, cfg.t6_rho);

    nlohmann::ordered_json j;
    j["snapshot"] = snapshot_dir.string();
    j["nu"] = s.nu;
    j["t"] = s.t;
    j["euler"] = flow.describe();
    j["v_l2_sq"] = e.v_l2_sq;
    j["dissipation"] = e.dissipation;
    j["lin_stretch"] = e.lin_stretch;
    j["lin_visc"] = e.lin_visc;
    for (int k = 0; k < 6; ++k) j[fmt::format("T{}", k + 1)] = e.T[k];
    j["t6_nu"] = e.t6_nu;
    j["t6_split"] = {{"rho", cfg.t6_rho}, {"inner", split.inner}, {"outer", split.outer},
                     {"outer_bound", split.outer_bound}};
    std::cout << j.dump(2) << "\n";
    bool finite = std::isfinite(e.v_l2_sq) && std::isfinite(e.dissipation);
    for (double T : e.T) finite = finite && std::isfinite(T);
    return finite ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vanishing-viscosity laboratory: boundary-layer correctors, a wall-bounded Navier-Stokes solver, "
                 "and inviscid-limit diagnostics"};
    app.require_subcommand(1);

    std::string config_path, out_dir, in_path, snapshot_dir;
    bool no_svg = false;
    int jobs = 1;

    auto* check = app.add_subcommand("corrector-check", "wall contract, zero mean, scaling and residual checks");
    check->add_option("--config", config_path, "config file");

    auto* solve_cmd = app.add_subcommand("solve", "run the configured flow and write snapshots");
    solve_cmd->add_option("--config", config_path, "config file")->required();
    solve_cmd->add_option("--out", out_dir, "snapshot root directory")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "run the viscosity sweep and write the report");
    sweep_cmd->add_option("--config", config_path, "config file")->required();
    sweep_cmd->add_option("--out", out_dir, "output directory (default: output.dir)");
    sweep_cmd->add_flag("--no-svg", no_svg, "skip the log-log plots");
    sweep_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* diag_cmd = app.add_subcommand("diagnose", "energy breakdown of one stored snapshot");
    diag_cmd->add_option("snapshot", snapshot_dir, "snapshot directory")->required();
    diag_cmd->add_option("--config", config_path, "config naming the Euler flow");

    auto* report_cmd = app.add_subcommand("report", "re-render outputs from a summary.json");
    report_cmd->add_option("summary", in_path, "summary.json of an earlier sweep")->required();
    report_cmd->add_option("--out", out_dir, "output directory")->required();
    report_cmd->add_flag("--no-svg", no_svg, "skip the log-log plots");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return corrector_check(config_or_default(config_path));
        if (*solve_cmd) return solve(load_config(config_path), out_dir);
        if (*sweep_cmd) {
            const SweepConfig cfg = load_config(config_path);
            const fs::path out = out_dir.empty() ? fs::path(cfg.out_dir) : fs::path(out_dir);
            return emit_and_summarize(run_sweep(cfg, jobs), out, cfg.svg && !no_svg);
        }
        if (*diag_cmd) return diagnose(config_or_default(config_path), snapshot_dir);
        if (*report_cmd) {
            const Report report = load_report(in_path);
            return emit_and_summarize(report, out_dir, report.config.svg && !no_svg);
        }
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
    return 0;
}
