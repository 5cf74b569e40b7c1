#pragma once

#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vvlab/corrector.hpp"
#include "vvlab/grid.hpp"

namespace vvlab {

enum class Scenario { shear_analytic, shear_numeric, perturbed_shear, snapshot_replay };
std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

enum class GridPolicy { fixed, nu_refined };
std::string to_string(GridPolicy p);
GridPolicy grid_policy_from_string(const std::string& name);

/// Raised for malformed configuration text; `line` is 1-based (0 when the
/// problem is not tied to a line, e.g. a failed cross-field check).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Everything a sweep needs. The text form is one `key = value` per line with
/// dotted keys, `#` comments, and `[a, b, ...]` for lists:
///
///     sweep.scenario = shear_analytic
///     sweep.nu = [1e-2, 1e-3, 1e-4]
///
/// Unset keys keep their defaults; see valid_keys() for the full schema.
struct SweepConfig {
    Scenario scenario = Scenario::shear_analytic;
    std::vector<double> nu_list;

    // flow
    double U0 = 1.0;
    double amplitude = 0.1;
    int mode = 1;

    // domain
    double L1 = 2.0 * std::numbers::pi;
    double L2 = 4.0;
    TopBoundary top = TopBoundary::free_slip;

    // grid
    GridPolicy grid_policy = GridPolicy::nu_refined;
    int nx = 32;
    int ny = 256;
    /// fixed policy: ratio between the top and the wall cell.
    double stretch = 30.0;
    /// nu_refined policy: cells below sqrt(nu t_min).
    double cells_per_layer = 8.0;
    /// nu_refined policy, analytic playback only: cells below C nu.
    double kato_cells = 4.0;

    // solver
    double cfl = 0.4;
    double diffusion_safety = 0.25;

    // corrector
    ScaleKind scale = ScaleKind::prandtl;
    double a = 0.5;

    // criteria
    double C = 1.0;
    double temam_wang_b = 0.5;
    double ckv_a = 0.5;
    double wang_a = 0.5;
    double wang_c = 0.5;
    std::vector<double> rho_list{0.5, 0.1, 0.02};
    double t6_rho = 0.5;

    // time
    double t_min = 0.01;
    double T = 1.0;
    int samples = 33;

    // replay
    std::string replay_dir;
    Scenario replay_flow = Scenario::shear_analytic;

    // output
    std::string out_dir = "out";
    bool svg = true;

    /// Throws ConfigError on any violated invariant (nu_list strictly
    /// decreasing and positive, t_min < T, samples >= 3, ...).
    void validate() const;

    /// The largest viscosity of the sweep (nu_0).
    double nu0() const;
    /// Geometrically spaced sample times from t_min to T, both included.
    std::vector<double> sample_times() const;
    /// Domain height actually used: the perturbed shear needs the height
    /// on which it is a steady Euler flow.
    double height() const;
    Grid grid_for(double nu) const;
    CorrectorScale corrector_scale() const;

    /// Flat (key, value) echo in schema order; emit() is this list as text.
    std::vector<std::pair<std::string, std::string>> echo() const;
    std::string emit() const;

    bool operator==(const SweepConfig&) const = default;
};

/// Every accepted key in schema order.
std::vector<std::string> valid_keys();

SweepConfig parse_config(const std::string& text);
/// Reads and parses a config file; errors name the path and line.
SweepConfig load_config(const std::filesystem::path& path);

}  // namespace vvlab
