#include "vvlab/corrector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "vvlab/norms.hpp"
#include "vvlab/rate_fit.hpp"
#include "vvlab/special.hpp"

namespace vvlab {
namespace {

constexpr double kTwoOverSqrtPi = 2.0 * kInvSqrtPi;

// x2-dependent factors of the corrector at one (x2, t).
//   F  = erfc(z) - delta eta           u1 = -U F
//   R  = (1/sqrt(pi) - int eta) + z erfc z - e^{-z^2}/sqrt(pi)
struct Vertical {
    double F, F2, Ft, F22;  // F, d2 F, dt F, d22 F
    double R, Rt, R22;
};

// x1-dependent trace values at one (x1, t).
struct Horizontal {
    double U, U1, U11, U111, Ut, U1t;
};

struct Scale {
    double delta;
    double delta_t;  // d/dt delta(nu t) = nu delta'(nu t)
};

Scale scale_at(const CorrectorParams& p, double t) {
    const double s = p.nu * t;
    return {p.scale.delta(s), p.nu * p.scale.delta_prime(s)};
}

Vertical vertical(const CorrectorParams& p, const Scale& sc, double x2) {
    const double d = sc.delta;
    const double z = x2 / d;
    const double e = std::exp(-z * z);
    const double ec = erfc_eval(z);
    const double rate = sc.delta_t / d;

    Vertical v{};
    v.F = ec;
    v.F2 = -kTwoOverSqrtPi * e / d;
    v.Ft = kTwoOverSqrtPi * e * z * rate;
    v.F22 = 2.0 * kTwoOverSqrtPi * z * e / (d * d);
    v.R = z * ec - kInvSqrtPi * e;
    v.Rt = -z * ec * rate;
    v.R22 = -kTwoOverSqrtPi * e / (d * d);
    if (p.include_bump) {
        const double eta = p.bump.value(x2);
        v.F -= d * eta;
        v.F2 -= d * p.bump.prime(x2);
        v.Ft -= sc.delta_t * eta;
        v.F22 -= d * p.bump.second(x2);
        v.R += kInvSqrtPi - p.bump.cumulative(x2);
        v.R22 -= p.bump.prime(x2);
    } else {
        v.R += kInvSqrtPi;
    }
    return v;
}

Horizontal horizontal(const EulerTrace& tr, double x1, double t) {
    return {tr.value(x1, t), tr.d1(x1, t), tr.d11(x1, t), tr.d111(x1, t), tr.dt(x1, t), tr.d1t(x1, t)};
}

CorrectorPoint combine(const CorrectorParams& p, const Scale& sc, const Horizontal& h, const Vertical& v) {
    const double d = sc.delta;
    const double nu = p.nu;
    CorrectorPoint c{};
    c.u1 = -h.U * v.F;
    c.d1_u1 = -h.U1 * v.F;
    c.d2_u1 = -h.U * v.F2;
    c.d12_u1 = -h.U1 * v.F2;
    c.u2 = d * h.U1 * v.R;
    c.d1_u2 = d * h.U11 * v.R;
    c.d2_u2 = h.U1 * v.F;
    c.heat_residual_1 = -(h.Ut - nu * h.U11) * v.F - h.U * (v.Ft - nu * v.F22);
    c.heat_residual_2 = h.U1 * (sc.delta_t * v.R + d * v.Rt - nu * d * v.R22) + d * (h.U1t - nu * h.U111) * v.R;
    return c;
}

void validate(const CorrectorParams& p, double t) {
    if (!(p.nu > 0.0)) throw std::invalid_argument(fmt::format("corrector needs nu > 0, got {}", p.nu));
    if (!(t > 0.0)) throw std::invalid_argument(fmt::format("corrector needs t > 0, got {}", t));
}

}  // namespace

std::string to_string(ScaleKind k) { return k == ScaleKind::prandtl ? "prandtl" : "power"; }

ScaleKind scale_kind_from_string(const std::string& name) {
    if (name == "prandtl") return ScaleKind::prandtl;
    if (name == "power") return ScaleKind::power;
    throw std::invalid_argument(fmt::format("unknown corrector scale '{}' (prandtl|power)", name));
}

CorrectorScale CorrectorScale::prandtl() { return {}; }

CorrectorScale CorrectorScale::power(double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument(fmt::format("power scale needs 0 < a < 1, got {}", a));
    CorrectorScale s;
    s.kind_ = ScaleKind::power;
    s.a_ = a;
    return s;
}

double CorrectorScale::delta(double s) const {
    if (!(s > 0.0)) throw std::invalid_argument(fmt::format("layer scale needs nu t > 0, got {}", s));
    return kind_ == ScaleKind::prandtl ? std::sqrt(4.0 * s) : std::pow(s, a_);
}

double CorrectorScale::delta_prime(double s) const {
    if (!(s > 0.0)) throw std::invalid_argument(fmt::format("layer scale needs nu t > 0, got {}", s));
    return kind_ == ScaleKind::prandtl ? 1.0 / std::sqrt(s) : a_ * std::pow(s, a_ - 1.0);
}

std::string CorrectorScale::describe() const {
    return kind_ == ScaleKind::prandtl ? "prandtl" : fmt::format("power(a={:.17g})", a_);
}

CorrectorField build_corrector(const CorrectorParams& params, const Grid& grid, double t) {
    validate(params, t);
    const Scale sc = scale_at(params, t);
    CorrectorField out(grid);
    out.t = t;
    out.delta = sc.delta;
    if (params.trace.identically_zero()) return out;

    std::vector<Horizontal> hs(grid.nx());
    for (int i = 0; i < grid.nx(); ++i) hs[i] = horizontal(params.trace, grid.x1(i), t);
    for (int j = 0; j < grid.ny(); ++j) {
        const Vertical v = vertical(params, sc, grid.x2(j));
        for (int i = 0; i < grid.nx(); ++i) {
            const CorrectorPoint c = combine(params, sc, hs[i], v);
            out.u1(i, j) = c.u1;
            out.u2(i, j) = c.u2;
            out.d1_u1(i, j) = c.d1_u1;
            out.d2_u1(i, j) = c.d2_u1;
            out.d12_u1(i, j) = c.d12_u1;
            out.d1_u2(i, j) = c.d1_u2;
            out.d2_u2(i, j) = c.d2_u2;
            out.heat_residual_1(i, j) = c.heat_residual_1;
            out.heat_residual_2(i, j) = c.heat_residual_2;
        }
    }
    return out;
}

CorrectorPoint evaluate_corrector(const CorrectorParams& params, double x1, double x2, double t) {
    validate(params, t);
    if (x2 < 0.0) throw std::invalid_argument("corrector is defined for x2 >= 0");
    const Scale sc = scale_at(params, t);
    return combine(params, sc, horizontal(params.trace, x1, t), vertical(params, sc, x2));
}

ZeroMeanResult zero_mean_check(const CorrectorParams& params, double x1, double t) {
    validate(params, t);
    ZeroMeanResult out;
    if (params.trace.identically_zero()) return out;

    const Scale sc = scale_at(params, t);
    const double U = params.trace.value(x1, t);
    const double cut = 10.0;
    auto u1 = [&](double x2) { return -U * vertical(params, sc, x2).F; };

    // Breakpoints at the layer scale and at the ends of the bump support.
    std::vector<double> knots = {0.0, 1.0, 2.0, cut};
    for (double m : {1.0, 4.0, 8.0}) {
        if (m * sc.delta < cut) knots.push_back(m * sc.delta);
    }
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

    // Integrating erfc and delta*eta separately keeps the cancellation exact
    // up to rounding in the final subtraction.
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        s += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(u1, knots[k], knots[k + 1], 15, 1e-13);
    }
    out.residual = s;
    const double Z = cut / sc.delta;
    // int_cut^inf |U| erfc(x2/delta) = |U| delta (e^{-Z^2}/sqrt(pi) - Z erfc Z) <= |U| delta e^{-Z^2}/sqrt(pi).
    out.tail_bound = std::abs(U) * sc.delta * kInvSqrtPi * std::exp(-Z * Z);
    return out;
}

std::string to_string(CorrectorQuantity q) {
    switch (q) {
        case CorrectorQuantity::u1: return "u1";
        case CorrectorQuantity::d1_u1: return "d1_u1";
        case CorrectorQuantity::d2_u1: return "d2_u1";
        case CorrectorQuantity::d12_u1: return "d12_u1";
        case CorrectorQuantity::u2: return "u2";
        case CorrectorQuantity::d1_u2: return "d1_u2";
    }
    return "unknown";
}

CorrectorQuantity corrector_quantity_from_string(const std::string& name) {
    for (auto q : {CorrectorQuantity::u1, CorrectorQuantity::d1_u1, CorrectorQuantity::d2_u1,
                   CorrectorQuantity::d12_u1, CorrectorQuantity::u2, CorrectorQuantity::d1_u2}) {
        if (to_string(q) == name) return q;
    }
    throw std::invalid_argument(fmt::format("unknown corrector quantity '{}'", name));
}

double expected_scaling_exponent(const CorrectorScale& scale, CorrectorQuantity q, double p) {
    const double a = scale.exponent();
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    switch (q) {
        case CorrectorQuantity::u1:
        case CorrectorQuantity::d1_u1: return a * inv_p;
        case CorrectorQuantity::d2_u1:
        case CorrectorQuantity::d12_u1: return a * (inv_p - 1.0);
        case CorrectorQuantity::u2:
        case CorrectorQuantity::d1_u2: return a;
    }
    return 0.0;
}

Grid scaling_grid(double delta, double height) {
    return Grid::with_first_cell(64, 1025, 2.0 * std::numbers::pi, height, TopBoundary::free_slip, delta / 50.0);
}

ScalingResult scaling_exponents(const CorrectorParams& params, double p, CorrectorQuantity quantity,
                                const std::vector<double>& nu_t_samples) {
    if (nu_t_samples.size() < 4) throw std::invalid_argument("scaling fit needs at least 4 samples");
    const auto [lo, hi] = std::minmax_element(nu_t_samples.begin(), nu_t_samples.end());
    if (!(*lo > 0.0) || std::log10(*hi / *lo) < 2.0 - 1e-12) {
        throw std::invalid_argument("scaling samples must be positive and span at least two decades of nu t");
    }
    ScalingResult out;
    out.expected = expected_scaling_exponent(params.scale, quantity, p);
    std::vector<std::pair<double, double>> points;
    for (double s : nu_t_samples) {
        const double t = s / params.nu;
        const Grid grid = scaling_grid(params.scale.delta(s));
        const CorrectorField c = build_corrector(params, grid, t);
        const ScalarField* f = nullptr;
        switch (quantity) {
            case CorrectorQuantity::u1: f = &c.u1; break;
            case CorrectorQuantity::d1_u1: f = &c.d1_u1; break;
            case CorrectorQuantity::d2_u1: f = &c.d2_u1; break;
            case CorrectorQuantity::d12_u1: f = &c.d12_u1; break;
            case CorrectorQuantity::u2: f = &c.u2; break;
            case CorrectorQuantity::d1_u2: f = &c.d1_u2; break;
        }
        const double n = lp_norm(*f, p);
        out.samples.push_back({s, n});
        if (!(n > 0.0)) {
            throw std::domain_error(fmt::format("{} vanishes identically; no exponent to fit", to_string(quantity)));
        }
        points.emplace_back(s, n);
    }
    const RateFit fit = fit_rate(points);
    out.exponent = fit.exponent;
    out.r_squared = fit.r_squared;
    return out;
}

std::pair<double, double> heat_residual_norm(const CorrectorParams& params, const Grid& grid, double t) {
    const CorrectorField c = build_corrector(params, grid, t);
    return {lp_norm(c.heat_residual_1, 2.0), lp_norm(c.heat_residual_2, 2.0)};
}

}  // namespace vvlab
