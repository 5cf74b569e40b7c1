#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vvlab/bump.hpp"
#include "vvlab/euler_trace.hpp"
#include "vvlab/field.hpp"

namespace vvlab {

enum class ScaleKind { prandtl, power };
std::string to_string(ScaleKind k);
ScaleKind scale_kind_from_string(const std::string& name);

/// Boundary-layer thickness delta(s) as a function of s = nu t:
/// prandtl delta = sqrt(4 s), power delta = s^a with 0 < a < 1.
class CorrectorScale {
public:
    static CorrectorScale prandtl();
    static CorrectorScale power(double a);

    ScaleKind kind() const noexcept { return kind_; }
    /// Exponent of delta in s (1/2 for prandtl).
    double exponent() const noexcept { return kind_ == ScaleKind::prandtl ? 0.5 : a_; }

    double delta(double s) const;
    double delta_prime(double s) const;
    /// s delta'(s) / delta(s); constant for both variants.
    double log_slope(double s) const { return s * delta_prime(s) / delta(s); }

    std::string describe() const;

private:
    ScaleKind kind_ = ScaleKind::prandtl;
    double a_ = 0.5;
};

struct CorrectorParams {
    double nu = 1e-3;
    EulerTrace trace;
    BumpSpec bump;
    CorrectorScale scale = CorrectorScale::prandtl();
    /// Diagnostic switch: false drops the delta*eta mass correction, leaving
    /// the pure erfc lift (which is exactly caloric for the Prandtl scale).
    bool include_bump = true;
};

/// The corrector and its closed-form derivatives at one time:
///   u1 = -U (erfc(z) - delta eta(x2)),  u2 = delta d1U R(x2),  z = x2/delta.
/// heat_residual_k = (d_t - nu Laplacian) u_k.
struct CorrectorField {
    double t = 0.0;
    double delta = 0.0;
    ScalarField u1, u2;
    ScalarField d1_u1, d2_u1, d12_u1;
    ScalarField d1_u2, d2_u2;
    ScalarField heat_residual_1, heat_residual_2;

    explicit CorrectorField(const Grid& grid)
        : u1(grid), u2(grid), d1_u1(grid), d2_u1(grid), d12_u1(grid), d1_u2(grid), d2_u2(grid),
          heat_residual_1(grid), heat_residual_2(grid) {}

    VelocityField velocity() const { return VelocityField(u1, u2); }
};

CorrectorField build_corrector(const CorrectorParams& params, const Grid& grid, double t);

/// All corrector quantities at a single point.
struct CorrectorPoint {
    double u1, u2, d1_u1, d2_u1, d12_u1, d1_u2, d2_u2, heat_residual_1, heat_residual_2;
};
CorrectorPoint evaluate_corrector(const CorrectorParams& params, double x1, double x2, double t);

struct ZeroMeanResult {
    /// Adaptive quadrature of u1 over 0 < x2 < 10.
    double residual = 0.0;
    /// Bound on the neglected integral over x2 > 10.
    double tail_bound = 0.0;
};
ZeroMeanResult zero_mean_check(const CorrectorParams& params, double x1, double t);

enum class CorrectorQuantity { u1, d1_u1, d2_u1, d12_u1, u2, d1_u2 };
std::string to_string(CorrectorQuantity q);
CorrectorQuantity corrector_quantity_from_string(const std::string& name);

/// Exponent of ||quantity||_p in s = nu t predicted by the layer scaling:
/// a/p for u1 and d1_u1, a(1/p - 1) for the x2 derivatives, a for u2 and d1_u2,
/// where delta ~ s^a.
double expected_scaling_exponent(const CorrectorScale& scale, CorrectorQuantity q, double p);

struct ScalingSample {
    double nu_t;
    double norm;
};
struct ScalingResult {
    double exponent = 0.0;
    double expected = 0.0;
    double r_squared = 0.0;
    std::vector<ScalingSample> samples;
};

/// Least-squares slope of log ||quantity||_{L^p} against log(nu t). Each
/// sample is evaluated at t = s/nu on a wall-graded grid resolving delta(s).
ScalingResult scaling_exponents(const CorrectorParams& params, double p, CorrectorQuantity quantity,
                                const std::vector<double>& nu_t_samples);

/// The grid used by scaling_exponents for thickness delta.
Grid scaling_grid(double delta, double height = 4.0);

/// L2 norms of the two heat residual components.
std::pair<double, double> heat_residual_norm(const CorrectorParams& params, const Grid& grid, double t);

}  // namespace vvlab
