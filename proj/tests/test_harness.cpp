/**
 * @file test_harness.cpp
 * @brief Configuration parsing, rate fits, sweep orchestration and report files.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vvlab/config.hpp"
#include "vvlab/rate_fit.hpp"
#include "vvlab/report.hpp"
#include "vvlab/snapshot.hpp"
#include "vvlab/sweep.hpp"

using namespace vvlab;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("vvlab_harness_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

const RateFit& fit_named(const Report& r, const std::string& name) {
    for (const NamedFit& f : r.fits) {
        if (f.name == name) return f.fit;
    }
    throw std::runtime_error("no fit named " + name);
}

SweepConfig shear_sweep() {
    SweepConfig c;
    c.scenario = Scenario::shear_analytic;
    c.nu_list = {1e-2, 1e-3, 1e-4, 1e-5};
    return c;
}

/// A small solved sweep: coarse fixed grid, few samples.
SweepConfig small_numeric_sweep() {
    SweepConfig c;
    c.scenario = Scenario::perturbed_shear;
    c.nu_list = {1e-2, 5e-3, 2e-3};
    c.grid_policy = GridPolicy::fixed;
    c.nx = 16;
    c.ny = 33;
    c.stretch = 5.0;
    c.t_min = 0.05;
    c.T = 0.25;
    c.samples = 5;
    return c;
}

}  // namespace

// ============================================================================
// Configuration
// ============================================================================

TEST(Config, MinimalConfigTakesDefaults) {
    const SweepConfig c = parse_config("sweep.scenario = shear_analytic\nsweep.nu = [1e-2, 1e-3]\n");
    EXPECT_EQ(c.scenario, Scenario::shear_analytic);
    ASSERT_EQ(c.nu_list.size(), 2u);
    EXPECT_DOUBLE_EQ(c.L1, 2 * std::numbers::pi);
    EXPECT_DOUBLE_EQ(c.L2, 4.0);
    EXPECT_DOUBLE_EQ(c.a, 0.5);
    EXPECT_DOUBLE_EQ(c.nu0(), 1e-2);
}

TEST(Config, CommentsQuotesAndBlankLines) {
    const SweepConfig c = parse_config(
        "# a sweep\n\n  sweep.nu = [1e-2 , 1e-3]   # trailing comment\noutput.dir = \"out dir # not a comment\"\n"
        "output.svg = false\n");
    EXPECT_EQ(c.out_dir, "out dir # not a comment");
    EXPECT_FALSE(c.svg);
}

TEST(Config, RejectsIncreasingViscosities) {
    EXPECT_THROW(parse_config("sweep.nu = [1e-3, 1e-2]\n"), ConfigError);
    EXPECT_THROW(parse_config("sweep.nu = [1e-3, 1e-3]\n"), ConfigError);
}

TEST(Config, UnknownKeyListsValidKeys) {
    try {
        parse_config("sweep.nu = [1e-2]\nsweep.viscosity = 3\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 2);
        const std::string what = e.what();
        EXPECT_NE(what.find("sweep.viscosity"), std::string::npos);
        for (const std::string& k : valid_keys()) EXPECT_NE(what.find(k), std::string::npos) << k;
    }
}

TEST(Config, TypeMismatchReportsTheLine) {
    try {
        parse_config("sweep.scenario = shear_analytic\n\ngrid.nx = twelve\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(parse_config("grid.nx = 12.5\n"), ConfigError);
    EXPECT_THROW(parse_config("sweep.nu = 1e-3\n"), ConfigError);
    EXPECT_THROW(parse_config("sweep.scenario = turbulence\n"), ConfigError);
    EXPECT_THROW(parse_config("grid.nx = 16\ngrid.nx = 32\n"), ConfigError);
}

TEST(Config, EmitThenLoadRoundTrips) {
    SweepConfig c = small_numeric_sweep();
    c.rho_list = {0.3, 0.03};
    c.out_dir = "some/where";
    c.scale = ScaleKind::power;
    c.a = 0.4;
    c.wang_c = 0.75;
    c.nu_list = {0.1, 1.0 / 3.0 * 1e-2};
    EXPECT_EQ(parse_config(c.emit()), c);

    const fs::path dir = scratch_dir("config");
    fs::create_directories(dir);
    std::ofstream(dir / "c.cfg") << c.emit();
    EXPECT_EQ(load_config(dir / "c.cfg"), c);
    EXPECT_EQ(parse_config(SweepConfig{}.emit()), SweepConfig{});
}

TEST(Config, MissingFileNamesThePath) {
    try {
        load_config("/nonexistent/vvlab.cfg");
        FAIL() << "expected an error";
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find("/nonexistent/vvlab.cfg"), std::string::npos);
    }
}

TEST(Config, SampleTimesAndGridPolicy) {
    SweepConfig c;
    const auto t = c.sample_times();
    ASSERT_EQ(static_cast<int>(t.size()), c.samples);
    EXPECT_EQ(t.front(), c.t_min);
    EXPECT_EQ(t.back(), c.T);
    for (std::size_t k = 1; k < t.size(); ++k) EXPECT_GT(t[k], t[k - 1]);

    c.scenario = Scenario::shear_numeric;
    const Grid g = c.grid_for(1e-4);
    EXPECT_NEAR(g.h2(), std::sqrt(1e-4 * c.t_min) / c.cells_per_layer, 1e-12);
    c.scenario = Scenario::perturbed_shear;
    EXPECT_DOUBLE_EQ(c.grid_for(1e-3).height_x2(), EulerFlow::perturbed_shear_height(1));
}

// ============================================================================
// Rate fits
// ============================================================================

TEST(RateFit, RecoversExactPowerLaw) {
    const RateFit f = fit_rate({{1e-2, 0.17782794100389229}, {1e-3, 0.1}, {1e-4, 0.056234132519034911}});
    ASSERT_TRUE(f.ok());
    EXPECT_NEAR(f.exponent, 0.25, 1e-10);
    EXPECT_NEAR(f.prefactor(), 0.1 / std::pow(1e-3, 0.25), 1e-10);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
    EXPECT_EQ(f.points_used, 3);
}

TEST(RateFit, ConstantValuesGiveZeroExponent) {
    const RateFit f = fit_rate({{1e-2, 3.0}, {1e-3, 3.0}, {1e-4, 3.0}, {1e-5, 3.0}});
    EXPECT_NEAR(f.exponent, 0.0, 1e-10);
    EXPECT_NEAR(f.prefactor(), 3.0, 1e-10);
}

TEST(RateFit, ScaleEquivariance) {
    std::vector<std::pair<double, double>> pts{{1e-2, 0.3}, {1e-3, 0.11}, {1e-4, 0.05}, {1e-5, 0.017}};
    const RateFit a = fit_rate(pts);
    for (auto& p : pts) p.second *= 37.5;
    const RateFit b = fit_rate(pts);
    EXPECT_NEAR(a.exponent, b.exponent, 1e-12);
    EXPECT_NEAR(b.log_prefactor - a.log_prefactor, std::log(37.5), 1e-12);
}

TEST(RateFit, ZerosAreExcludedAndReported) {
    const RateFit zero = fit_rate({{1e-2, 0.0}, {1e-3, 0.0}, {1e-4, 0.0}});
    EXPECT_EQ(zero.status, FitStatus::identically_zero);
    EXPECT_EQ(to_string(zero.status), "identically zero");
    const RateFit some = fit_rate({{1e-2, 1.0}, {1e-3, 0.0}, {1e-4, 0.5}, {1e-5, 0.25}});
    EXPECT_TRUE(some.ok());
    EXPECT_EQ(some.points_excluded, 1);
    const RateFit few = fit_rate({{1e-2, 1.0}, {1e-3, 0.0}, {1e-4, 0.5}});
    EXPECT_EQ(few.status, FitStatus::too_few_points);
    EXPECT_THROW(fit_rate({{1e-2, 1.0}, {1e-3, 0.5}}), std::invalid_argument);
}

// ============================================================================
// Sweeps
// ============================================================================

TEST(Sweep, AnalyticShearRates) {
    const Report r = run_sweep(shear_sweep());
    for (const NuResult& n : r.results) ASSERT_TRUE(n.ok) << n.error;
    const RateFit& diff = fit_named(r, "sup_diff_l2");
    EXPECT_NEAR(diff.exponent, 0.25, 0.02);
    const RateFit& kato = fit_named(r, "kato");
    EXPECT_GT(kato.exponent, 0.8);
    EXPECT_LT(kato.exponent, 1.05);
    EXPECT_EQ(fit_named(r, "temam_wang").status, FitStatus::identically_zero);
    EXPECT_EQ(fit_named(r, "layer_sup").status, FitStatus::identically_zero);
    EXPECT_GT(r.c_eta, 0.0);
}

TEST(Sweep, TruncationTailIsTheLayerLeftAboveTheStrip) {
    SweepConfig c = shear_sweep();
    c.nu_list = {1e-2, 1e-3};
    c.L2 = 0.5;
    const Report r = run_sweep(c);
    // the shear corrector at the top is U0 erfc(L2 / sqrt(4 nu t)), largest at T
    for (const NuResult& n : r.results) {
        const double oracle = std::erfc(c.L2 / std::sqrt(4 * n.nu * c.T));
        EXPECT_NEAR(n.truncation_tail, oracle, 1e-12 * oracle) << n.nu;
    }
    // the default strip leaves nothing measurable behind
    EXPECT_LT(run_sweep(shear_sweep()).results[0].truncation_tail, 1e-100);
}

TEST(Sweep, ZeroFlowGivesZeros) {
    SweepConfig c = small_numeric_sweep();
    c.scenario = Scenario::shear_numeric;
    c.U0 = 0.0;
    const Report r = run_sweep(c);
    for (const NuResult& n : r.results) {
        ASSERT_TRUE(n.ok) << n.error;
        EXPECT_EQ(n.sup_diff_l2, 0.0);
        EXPECT_EQ(n.sup_v_l2, 0.0);
        EXPECT_EQ(n.criteria.kato.value, 0.0);
        EXPECT_EQ(n.criteria.kelliher.value, 0.0);
        EXPECT_EQ(n.criteria.temam_wang.value, 0.0);
        EXPECT_EQ(n.criteria.bt.value, 0.0);
        EXPECT_EQ(n.criteria.ckv.value, 0.0);
        for (const EnergyBreakdown& e : n.energy) {
            for (double T : e.T) EXPECT_EQ(T, 0.0);
        }
    }
    // the Wang weight integral is a property of the layer geometry alone
    for (const NamedFit& f : r.fits) {
        if (f.name == "wang_integral") {
            EXPECT_TRUE(f.fit.ok());
            continue;
        }
        EXPECT_EQ(f.fit.status, FitStatus::identically_zero) << f.name;
    }
}

TEST(Sweep, ResultsDoNotDependOnWorkerCount) {
    const SweepConfig c = small_numeric_sweep();
    const Report one = run_sweep(c, 1);
    const Report three = run_sweep(c, 3);
    EXPECT_EQ(summary_json(one), summary_json(three));
    EXPECT_EQ(energy_csv(one), energy_csv(three));
}

TEST(Sweep, RemovingOneViscosityLeavesTheOthersUntouched) {
    SweepConfig c = small_numeric_sweep();
    const Report full = run_sweep(c);
    c.nu_list = {1e-2, 2e-3};
    const Report part = run_sweep(c);
    ASSERT_EQ(part.results.size(), 2u);
    SweepConfig only = c;
    Report a, b;
    a.config = only;
    b.config = only;
    a.results = {full.results[0], full.results[2]};
    b.results = part.results;
    EXPECT_EQ(energy_csv(a), energy_csv(b));
    EXPECT_EQ(criteria_csv(a), criteria_csv(b));
}

TEST(Sweep, FailingViscosityIsQuarantined) {
    const fs::path dir = scratch_dir("replay");
    SweepConfig solve = small_numeric_sweep();
    solve.nu_list = {1e-2};
    const auto traj = flow_trajectory(solve, 1e-2);
    for (std::size_t k = 0; k < traj.size(); ++k) write_snapshot(dir / snapshot_subdir(1e-2, int(k)), traj[k]);

    SweepConfig replay = small_numeric_sweep();
    replay.scenario = Scenario::snapshot_replay;
    replay.replay_flow = Scenario::perturbed_shear;
    replay.replay_dir = dir.string();
    replay.nu_list = {1e-2, 5e-3};  // nothing stored for 5e-3
    const Report r = run_sweep(replay);
    ASSERT_EQ(r.results.size(), 2u);
    EXPECT_TRUE(r.results[0].ok) << r.results[0].error;
    EXPECT_FALSE(r.results[1].ok);
    EXPECT_NE(r.results[1].error.find("no snapshots"), std::string::npos);
    EXPECT_NE(summary_json(r).find("\"quarantined\""), std::string::npos);

    // the replayed point reproduces the solved one
    const Report solved = run_sweep(solve);
    EXPECT_EQ(solved.results[0].sup_v_l2, r.results[0].sup_v_l2);
    EXPECT_EQ(solved.results[0].criteria.kato.value, r.results[0].criteria.kato.value);
}

// ============================================================================
// Output files
// ============================================================================

TEST(Outputs, RepeatedRunsAreByteIdentical) {
    const SweepConfig c = small_numeric_sweep();
    const fs::path d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
    const auto files = emit_outputs(run_sweep(c), d1, true);
    emit_outputs(run_sweep(c, 2), d2, true);
    ASSERT_FALSE(files.empty());
    for (const fs::path& f : files) EXPECT_EQ(read_file(f), read_file(d2 / f.filename())) << f;
}

TEST(Outputs, EmptySweepGivesValidSummary) {
    SweepConfig c;
    c.nu_list.clear();
    const Report r = run_sweep(c);
    const fs::path dir = scratch_dir("empty");
    emit_outputs(r, dir, true);
    const Report back = load_report(dir / "summary.json");
    EXPECT_TRUE(back.results.empty());
    EXPECT_EQ(read_file(dir / "energy.csv"), first_line(read_file(dir / "energy.csv")) + "\n");
    EXPECT_EQ(read_file(dir / "criteria.csv"), first_line(read_file(dir / "criteria.csv")) + "\n");
}

TEST(Outputs, SvgOnlyWhenEnabled) {
    const Report r = run_sweep(shear_sweep());
    const fs::path with = scratch_dir("svg_on"), without = scratch_dir("svg_off");
    emit_outputs(r, with, true);
    emit_outputs(r, without, false);
    int with_svg = 0, without_svg = 0;
    for (const auto& e : fs::directory_iterator(with)) with_svg += e.path().extension() == ".svg";
    for (const auto& e : fs::directory_iterator(without)) without_svg += e.path().extension() == ".svg";
    EXPECT_GT(with_svg, 0);
    EXPECT_EQ(without_svg, 0);
    EXPECT_TRUE(fs::exists(with / "fit_sup_diff_l2.svg"));
    // identically zero series are not plotted
    EXPECT_FALSE(fs::exists(with / "fit_temam_wang.svg"));
}

TEST(Outputs, CsvColumnOrder) {
    EXPECT_EQ(first_line(energy_csv(Report{})),
              "nu,t,v_l2_sq,dissipation,lin_stretch,lin_visc,T1,T2,T3,T4,T5,T6,t6_nu,identity_residual");
    const std::string crit = first_line(criteria_csv(Report{}));
    EXPECT_EQ(crit.rfind("nu,ok,kato,", 0), 0u);
    EXPECT_EQ(first_line(assumptions_csv(Report{})),
              "nu,rho,E,I,B,I_mixed,B_mixed,B_over_nu0,layer_cells,under_resolved");
}

TEST(Outputs, EveryEnergyRowIsACsvRow) {
    const Report r = run_sweep(small_numeric_sweep());
    std::size_t rows = 0;
    for (const NuResult& n : r.results) rows += n.energy.size();
    const std::string csv = energy_csv(r);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rows + 1);
}

TEST(Outputs, SummaryReloadsToTheSameReport) {
    const Report r = run_sweep(small_numeric_sweep());
    const std::string text = summary_json(r);
    const Report back = report_from_json(text);
    EXPECT_EQ(back.config, r.config);
    EXPECT_EQ(summary_json(back), text);
    EXPECT_EQ(energy_csv(back), energy_csv(r));
    EXPECT_EQ(criteria_csv(back), criteria_csv(r));
    EXPECT_EQ(assumptions_csv(back), assumptions_csv(r));
}

TEST(Outputs, UnwritableDirectoryNamesThePath) {
    const fs::path dir = scratch_dir("blocked");
    fs::create_directories(dir.parent_path());
    std::ofstream(dir) << "a file, not a directory";
    try {
        emit_outputs(Report{}, dir, false);
        FAIL() << "expected an error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find(dir.string()), std::string::npos);
    }
    fs::remove(dir);
}
