#include "vvlab/euler_flow.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "vvlab/special.hpp"

namespace vvlab {
namespace {

// S(x2) and its first three derivatives for S = sin(q x2)/q (x2 when q = 0).
struct Profile {
    double s, s1, s2, s3;
};

Profile profile(double q, double x2) {
    if (q == 0.0) return {x2, 1.0, 0.0, 0.0};
    const double sn = std::sin(q * x2);
    const double cs = std::cos(q * x2);
    return {sn / q, cs, -q * sn, -q * q * cs};
}

}  // namespace

EulerFlow EulerFlow::rest() { return {}; }

EulerFlow EulerFlow::uniform(double U0) {
    EulerFlow f;
    f.kind_ = EulerFlowKind::uniform;
    f.modes_ = {{U0, 0, 0.0, TimeModulation::steady}};
    f.trace_ = U0 == 0.0 ? EulerTrace::zero() : EulerTrace::constant(U0);
    f.label_ = fmt::format("uniform(U0={:.17g})", U0);
    return f;
}

EulerFlow EulerFlow::cellular(double A, int k, double q, TimeModulation modulation) {
    if (k < 0 || !(q > 0.0)) throw std::invalid_argument("cellular flow needs k >= 0 and q > 0");
    EulerFlow f;
    f.kind_ = EulerFlowKind::cellular;
    f.modes_ = {{A, k, q, modulation}};
    f.trace_ = EulerTrace::cosine(A, k, modulation);
    f.label_ = fmt::format("cellular(A={:.17g}, k={}, q={:.17g}, modulation={})", A, k, q, to_string(modulation));
    return f;
}

double EulerFlow::perturbed_shear_height(int m) {
    if (m <= 0) throw std::invalid_argument("perturbed shear needs mode m >= 1");
    return std::numbers::pi * std::numbers::sqrt3 / m;
}

EulerFlow EulerFlow::perturbed_shear(double U0, double A, int m, double height) {
    if (m <= 0) throw std::invalid_argument("perturbed shear needs mode m >= 1");
    if (!(height > 0.0)) throw std::invalid_argument("perturbed shear needs a positive height");
    const double q = std::numbers::pi / height;
    const double kappa = std::sqrt(double(m) * m + q * q);
    EulerFlow f;
    f.kind_ = EulerFlowKind::perturbed_shear;
    f.modes_ = {{U0, 0, kappa, TimeModulation::steady}, {A, m, q, TimeModulation::steady}};
    f.trace_ = EulerTrace::cosine(A, m, TimeModulation::steady, U0);
    f.label_ = fmt::format("perturbed_shear(U0={:.17g}, A={:.17g}, m={}, height={:.17g})", U0, A, m, height);
    return f;
}

std::string EulerFlow::describe() const { return label_; }

double EulerFlow::g(const Mode& m, double t) const {
    return m.modulation == TimeModulation::steady ? 1.0 : std::exp(-t);
}

double EulerFlow::psi(double x1, double x2, double t) const {
    double s = 0.0;
    for (const Mode& m : modes_) s += m.a * g(m, t) * std::cos(m.k * x1) * profile(m.q, x2).s;
    return s;
}

double EulerFlow::u1(double x1, double x2, double t) const {
    double s = 0.0;
    for (const Mode& m : modes_) s += m.a * g(m, t) * std::cos(m.k * x1) * profile(m.q, x2).s1;
    return s;
}

double EulerFlow::u2(double x1, double x2, double t) const {
    double s = 0.0;
    for (const Mode& m : modes_) s += m.a * g(m, t) * m.k * std::sin(m.k * x1) * profile(m.q, x2).s;
    return s;
}

double EulerFlow::omega(double x1, double x2, double t) const {
    double s = 0.0;
    for (const Mode& m : modes_) {
        const Profile p = profile(m.q, x2);
        s += m.a * g(m, t) * std::cos(m.k * x1) * (p.s2 - double(m.k) * m.k * p.s);
    }
    return s;
}

EulerSnapshot EulerFlow::sample(const Grid& grid, double t) const {
    EulerSnapshot e(grid);
    e.t = t;
    for (const Mode& m : modes_) {
        const double a = m.a * g(m, t);
        const double k = m.k;
        for (int j = 0; j < grid.ny(); ++j) {
            const Profile p = profile(m.q, grid.x2(j));
            for (int i = 0; i < grid.nx(); ++i) {
                const double c = std::cos(k * grid.x1(i));
                const double s = std::sin(k * grid.x1(i));
                e.u.u1(i, j) += a * c * p.s1;
                e.u.u2(i, j) += a * k * s * p.s;
                e.d1_u1(i, j) += -a * k * s * p.s1;
                e.d2_u1(i, j) += a * c * p.s2;
                e.d1_u2(i, j) += a * k * k * c * p.s;
                e.d2_u2(i, j) += a * k * s * p.s1;
                e.lap_u1(i, j) += a * c * (p.s3 - k * k * p.s1);
                e.lap_u2(i, j) += a * k * s * (p.s2 - k * k * p.s);
            }
        }
    }
    return e;
}

VelocityField EulerFlow::velocity(const Grid& grid, double t) const {
    return VelocityField(ScalarField::sample(grid, [&](double x1, double x2) { return u1(x1, x2, t); }),
                         ScalarField::sample(grid, [&](double x1, double x2) { return u2(x1, x2, t); }));
}

ScalarField EulerFlow::vorticity_field(const Grid& grid, double t) const {
    return ScalarField::sample(grid, [&](double x1, double x2) { return omega(x1, x2, t); });
}

ScalarField EulerFlow::streamfunction(const Grid& grid, double t) const {
    return ScalarField::sample(grid, [&](double x1, double x2) { return psi(x1, x2, t); });
}

AnalyticShear::AnalyticShear(double U0_, double nu_) : U0(U0_), nu(nu_) {
    if (!(nu > 0.0)) throw std::invalid_argument(fmt::format("analytic shear needs nu > 0, got {}", nu));
    if (!std::isfinite(U0)) throw std::invalid_argument("analytic shear needs a finite U0");
}

double AnalyticShear::u1(double x2, double t) const { return shear_exact(U0, nu, x2, t); }

double AnalyticShear::omega(double x2, double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("analytic shear needs t > 0");
    const double z = x2 / std::sqrt(4.0 * nu * t);
    return U0 * std::exp(-z * z) / std::sqrt(std::numbers::pi * nu * t);
}

VelocityField AnalyticShear::velocity(const Grid& grid, double t) const {
    std::vector<double> ones(grid.nx(), 1.0);
    std::vector<double> prof(grid.ny());
    for (int j = 0; j < grid.ny(); ++j) prof[j] = u1(grid.x2(j), t);
    VelocityField v(grid);
    v.u1 = ScalarField::separable(grid, ones, prof);
    return v;
}

ScalarField AnalyticShear::vorticity_field(const Grid& grid, double t) const {
    std::vector<double> ones(grid.nx(), 1.0);
    std::vector<double> prof(grid.ny());
    for (int j = 0; j < grid.ny(); ++j) prof[j] = omega(grid.x2(j), t);
    return ScalarField::separable(grid, ones, prof);
}

}  // namespace vvlab
