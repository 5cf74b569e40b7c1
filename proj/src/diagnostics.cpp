#include "vvlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vvlab/norms.hpp"
#include "vvlab/operators.hpp"
#include "vvlab/special.hpp"

namespace vvlab {
namespace {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("diagnostic inputs live on different grids");
}

// Integral of a pointwise expression f(k) over the grid nodes.
template <class F>
double integrate_expr(const Grid& g, F f) {
    const auto w = g.x2_weights();
    double s = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
        double row = 0.0;
        const std::size_t base = static_cast<std::size_t>(j) * g.nx();
        for (int i = 0; i < g.nx(); ++i) row += f(base + i);
        s += w[j] * row;
    }
    return s * g.h1();
}

ScalarField gaussian_t6_integrand(const VelocityField& u, const EulerTrace& trace, double delta, double t) {
    const Grid& g = u.grid();
    ScalarField f(g);
    const double pref = -2.0 * kInvSqrtPi / delta;
    for (int j = 0; j < g.ny(); ++j) {
        const double z = g.x2(j) / delta;
        const double k = pref * std::exp(-z * z);
        for (int i = 0; i < g.nx(); ++i) f(i, j) = k * u.u1(i, j) * u.u2(i, j) * trace.value(g.x1(i), t);
    }
    return f;
}

}  // namespace

VelocityField compute_v(const VelocityField& uNS, const VelocityField& uE, const VelocityField& uK) {
    require_same_grid(uNS.grid(), uE.grid());
    require_same_grid(uNS.grid(), uK.grid());
    return VelocityField(uNS.u1 - uE.u1 - uK.u1, uNS.u2 - uE.u2 - uK.u2);
}

double EnergyBreakdown::t_sum() const noexcept {
    double s = 0.0;
    for (double v : T) s += v;
    return s;
}

EnergyBreakdown energy_breakdown(const VelocityField& uNS, const EulerSnapshot& uE, const CorrectorField& ck,
                                 const CorrectorParams& params, double t) {
    const Grid& g = uNS.grid();
    require_same_grid(g, uE.u.grid());
    require_same_grid(g, ck.u1.grid());
    const VelocityField v = compute_v(uNS, uE.u, ck.velocity());
    const double nu = params.nu;

    const auto n1 = uNS.u1.values(), n2 = uNS.u2.values();
    const auto v1 = v.u1.values(), v2 = v.u2.values();
    const auto k1 = ck.u1.values(), k2 = ck.u2.values();
    const auto a11 = uE.d1_u1.values(), a12 = uE.d2_u1.values();  // d_j uE_1
    const auto a21 = uE.d1_u2.values(), a22 = uE.d2_u2.values();  // d_j uE_2
    const auto l1 = uE.lap_u1.values(), l2 = uE.lap_u2.values();
    const auto r1 = ck.heat_residual_1.values(), r2 = ck.heat_residual_2.values();
    const auto dk11 = ck.d1_u1.values(), dk21 = ck.d2_u1.values(), dk12 = ck.d1_u2.values();

    EnergyBreakdown e;
    e.t = t;
    e.v_l2_sq = integrate_expr(g, [&](std::size_t k) { return v1[k] * v1[k] + v2[k] * v2[k]; });
    {
        // grad v = grad uNS (stencils) - grad uE - grad uK (both exact)
        const VelocityField gn1 = gradient(uNS.u1), gn2 = gradient(uNS.u2);
        const auto p11 = gn1.u1.values(), p12 = gn1.u2.values(), p21 = gn2.u1.values(), p22 = gn2.u2.values();
        const auto dk22 = ck.d2_u2.values();
        e.dissipation = nu * integrate_expr(g, [&](std::size_t k) {
            const double g11 = p11[k] - a11[k] - dk11[k];
            const double g12 = p12[k] - a12[k] - dk21[k];
            const double g21 = p21[k] - a21[k] - dk12[k];
            const double g22 = p22[k] - a22[k] - dk22[k];
            return g11 * g11 + g12 * g12 + g21 * g21 + g22 * g22;
        });
    }
    e.lin_stretch = -integrate_expr(g, [&](std::size_t k) {
        return v1[k] * (v1[k] * a11[k] + v2[k] * a12[k]) + v2[k] * (v1[k] * a21[k] + v2[k] * a22[k]);
    });
    e.lin_visc = nu * integrate_expr(g, [&](std::size_t k) { return l1[k] * v1[k] + l2[k] * v2[k]; });
    e.T[0] = -integrate_expr(g, [&](std::size_t k) { return r1[k] * v1[k] + r2[k] * v2[k]; });
    e.T[1] = -integrate_expr(g, [&](std::size_t k) {
        return k1[k] * (n1[k] * a11[k] + n2[k] * a12[k]) + k2[k] * (n1[k] * a21[k] + n2[k] * a22[k]);
    });
    e.T[2] = -integrate_expr(g, [&](std::size_t k) {
        return v1[k] * (k1[k] * a11[k] + k2[k] * a12[k]) + v2[k] * (k1[k] * a21[k] + k2[k] * a22[k]);
    });
    e.T[3] = -integrate_expr(g, [&](std::size_t k) { return n1[k] * n2[k] * dk12[k]; });
    e.T[4] = -integrate_expr(g, [&](std::size_t k) { return (n1[k] * n1[k] - n2[k] * n2[k]) * dk11[k]; });
    e.T[5] = -integrate_expr(g, [&](std::size_t k) { return n1[k] * n2[k] * dk21[k]; });
    e.t6_nu = integrate(gaussian_t6_integrand(uNS, params.trace, ck.delta, t));
    return e;
}

EulerSnapshot euler_snapshot_from_velocity(const VelocityField& u, double t) {
    EulerSnapshot e(u.grid());
    e.t = t;
    e.u = u;
    e.d1_u1 = d1(u.u1);
    e.d2_u1 = d2(u.u1);
    e.d1_u2 = d1(u.u2);
    e.d2_u2 = d2(u.u2);
    e.lap_u1 = d11(u.u1) + d22(u.u1);
    e.lap_u2 = d11(u.u2) + d22(u.u2);
    return e;
}

double identity_audit(std::vector<EnergyBreakdown>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 3) throw std::invalid_argument("identity audit needs at least 3 sample times");
    std::vector<double> ts(n);
    for (int k = 0; k < n; ++k) {
        ts[k] = rows[k].t;
        if (k > 0 && !(ts[k] > ts[k - 1])) throw std::invalid_argument("identity audit needs increasing sample times");
    }
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const int first = std::clamp(k - 1, 0, n - 3);
        const auto w = fd_weights(ts[k], std::span<const double>(ts).subspan(first, 3), 1);
        double ddt = 0.0;
        for (int m = 0; m < 3; ++m) ddt += w[m] * rows[first + m].v_l2_sq;
        EnergyBreakdown& r = rows[k];
        r.identity_residual = 0.5 * ddt + r.dissipation - r.lin_stretch - r.lin_visc - r.t_sum();
        worst = std::max(worst, std::abs(r.identity_residual));
    }
    return worst;
}

T6Split t6_split(const VelocityField& uNS, const EulerTrace& trace, const CorrectorScale& scale, double nu,
                 double t, double rho) {
    if (!(t > 0.0) || !(nu > 0.0)) throw std::invalid_argument("t6_split needs t > 0 and nu > 0");
    if (rho < 0.0) throw std::invalid_argument("t6_split needs rho >= 0");
    const double delta = scale.delta(nu * t);
    const ScalarField f = gaussian_t6_integrand(uNS, trace, delta, t);
    T6Split s;
    s.full = integrate(f);
    s.inner = integrate_below(f, rho);
    s.outer = integrate_above(f, rho);
    const Grid& g = uNS.grid();
    ScalarField abs_uuU(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            abs_uuU(i, j) = std::abs(uNS.u1(i, j) * uNS.u2(i, j) * trace.value(g.x1(i), t));
        }
    }
    const double z = rho / delta;
    s.outer_bound = 2.0 * kInvSqrtPi / delta * std::exp(-z * z) * integrate_above(abs_uuU, rho);
    return s;
}

}  // namespace vvlab
