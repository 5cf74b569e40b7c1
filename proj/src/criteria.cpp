#include "vvlab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "vvlab/norms.hpp"
#include "vvlab/operators.hpp"

namespace vvlab {
namespace {

std::vector<double> times_of(const std::vector<Snapshot>& traj) {
    std::vector<double> t;
    t.reserve(traj.size());
    for (const Snapshot& s : traj) t.push_back(s.t);
    return t;
}

void note_layer(Functional& f, const Grid& g, double rho) {
    const LayerCut cut = layer_cut(g, rho);
    f.min_layer_cells = std::min(f.min_layer_cells, cut.cells());
    if (cut.cells() < kMinLayerCells) f.under_resolved = true;
    if (rho > g.height_x2()) f.clipped = true;
}

void require_nu(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument(fmt::format("criteria need nu > 0, got {}", nu));
}

// Runs per-snapshot integrand `g` and integrates in time.
template <class G>
Functional integrate_in_time(const std::vector<Snapshot>& traj, G per_snapshot) {
    Functional f;
    std::vector<double> values;
    values.reserve(traj.size());
    for (const Snapshot& s : traj) values.push_back(per_snapshot(s, f));
    if (traj.empty()) f.min_layer_cells = 0.0;
    f.value = time_trapezoid(times_of(traj), values);
    return f;
}

ScalarField velocity_squared(const VelocityField& u) { return hadamard(u.u1, u.u1) + hadamard(u.u2, u.u2); }

}  // namespace

double time_trapezoid(const std::vector<double>& t, const std::vector<double>& values) {
    if (t.size() != values.size()) throw std::invalid_argument("time trapezoid: size mismatch");
    double s = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) {
        if (!(t[k] > t[k - 1])) throw std::invalid_argument("time trapezoid: times must increase");
        s += 0.5 * (t[k] - t[k - 1]) * (values[k] + values[k - 1]);
    }
    return s;
}

Functional kato_functional(const std::vector<Snapshot>& traj, double nu, double C) {
    require_nu(nu);
    return integrate_in_time(traj, [&](const Snapshot& s, Functional& f) {
        note_layer(f, s.u.grid(), C * nu);
        return nu * integrate_below(grad_squared(s.u), C * nu);
    });
}

Functional kelliher_functional(const std::vector<Snapshot>& traj, double nu, double C) {
    require_nu(nu);
    return integrate_in_time(traj, [&](const Snapshot& s, Functional& f) {
        note_layer(f, s.u.grid(), C * nu);
        return integrate_below(velocity_squared(s.u), C * nu) / nu;
    });
}

Functional temam_wang_functional(const std::vector<Snapshot>& traj, double nu, double b) {
    require_nu(nu);
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("Temam-Wang layer needs delta = nu^b with 0 < b < 1");
    const double delta = std::pow(nu, b);
    return integrate_in_time(traj, [&](const Snapshot& s, Functional& f) {
        note_layer(f, s.u.grid(), delta);
        const ScalarField a = d1(s.u.u1);
        const ScalarField c = d1(s.u.u2);
        return nu * integrate_below(hadamard(a, a) + hadamard(c, c), delta);
    });
}

Functional bt_boundary_vorticity(const std::vector<Snapshot>& traj, double nu) {
    require_nu(nu);
    return integrate_in_time(traj, [&](const Snapshot& s, Functional&) {
        double w = 0.0;
        for (double v : s.omega.row(0)) w += std::abs(v);
        return nu * w * s.omega.grid().h1();
    });
}

Functional ckv_functional(const std::vector<Snapshot>& traj, const EulerTrace& trace, const CorrectorScale& scale,
                          double nu) {
    require_nu(nu);
    return integrate_in_time(traj, [&](const Snapshot& s, Functional& f) {
        if (!(s.t > 0.0)) throw std::invalid_argument("ckv functional needs t > 0");
        const Grid& g = s.omega.grid();
        const double nut = nu * s.t;
        const double shift = scale.delta(nut) / nut;
        const double layer = nut / scale.delta(nut);
        note_layer(f, g, layer);
        ScalarField neg(g);
        for (int j = 0; j < g.ny(); ++j) {
            for (int i = 0; i < g.nx(); ++i) {
                const double m = std::min(0.0, trace.value(g.x1(i), s.t) * (s.omega(i, j) + shift));
                neg(i, j) = m * m;
            }
        }
        if (layer < g.h2()) {
            double w = 0.0;
            for (double v : neg.row(0)) w += v;
            return w * g.h1() * layer;
        }
        return integrate_below(neg, layer);
    });
}

AssumptionRow assumption_row(const std::vector<Snapshot>& traj, double rho) {
    if (!(rho > 0.0)) throw std::invalid_argument(fmt::format("layer rho must be positive, got {}", rho));
    AssumptionRow row;
    row.rho = rho;
    if (traj.empty()) return row;
    const auto t = times_of(traj);
    std::vector<double> e, i1, b1, i2, b2;
    for (const Snapshot& s : traj) {
        const ScalarField uu = hadamard(s.u.u1, s.u.u2);
        const ScalarField du = d1(s.u.u1);
        const auto col_uu = column_layer_norms(uu, rho, kInf);
        const auto col_du = column_layer_norms(du, rho, 1.0);
        const auto col_u = column_layer_norms(s.u.u1, rho, kInf);
        const double h1 = s.u.grid().h1();
        e.push_back(x1_norm(col_uu, h1, 1.0));
        i1.push_back(std::pow(x1_norm(col_du, h1, 1.0), 2));
        b1.push_back(std::pow(x1_norm(col_u, h1, kInf), 2));
        i2.push_back(std::pow(x1_norm(col_du, h1, 2.0), 2));
        b2.push_back(std::pow(x1_norm(col_u, h1, 2.0), 2));
    }
    row.E = time_trapezoid(t, e);
    row.I = time_trapezoid(t, i1);
    row.B = time_trapezoid(t, b1);
    row.I_mixed = time_trapezoid(t, i2);
    row.B_mixed = time_trapezoid(t, b2);
    row.cells = layer_cut(traj.front().u.grid(), rho).cells();
    row.under_resolved = row.cells < 1.0;
    return row;
}

double wang_integral(const std::vector<double>& times, double nu, double a, double c) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("Wang integral needs 0 < a < 1");
    if (!(c > 0.0)) throw std::invalid_argument("Wang integral needs c > 0");
    require_nu(nu);
    std::vector<double> v;
    v.reserve(times.size());
    for (double t : times) {
        if (!(t > 0.0)) throw std::invalid_argument("Wang integral needs t > 0");
        const double delta = std::pow(nu * t, a);
        v.push_back(nu / delta + delta / std::pow(t, 1.0 + c));
    }
    return time_trapezoid(times, v);
}

WangReport wang_functionals(const std::vector<Snapshot>& traj, double nu, double a, double c) {
    if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument(fmt::format("log-stretched layer needs 0 < nu < 1, got {}", nu));
    WangReport r;
    r.wang_integral = wang_integral(times_of(traj), nu, a, c);
    const double stretch = std::sqrt(std::log(1.0 / nu));
    r.layer_sup = integrate_in_time(traj, [&](const Snapshot& s, Functional& f) {
        const double rho = std::pow(nu * s.t, a) * stretch;
        note_layer(f, s.u.grid(), rho);
        return layer_norm(hadamard(s.u.u1, s.u.u2), std::min(rho, s.u.grid().height_x2()), kInf, kInf);
    });
    return r;
}

}  // namespace vvlab
