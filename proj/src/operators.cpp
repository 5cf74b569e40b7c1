#include "vvlab/operators.hpp"

#include <stdexcept>

namespace vvlab {

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
    const int n = static_cast<int>(nodes.size());
    if (order < 0 || n <= order) throw std::invalid_argument("stencil too small for derivative order");
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = c[j][order];
    return out;
}

X2Stencil x2_first_derivative_stencil(const Grid& grid) {
    const int ny = grid.ny();
    const auto x = grid.x2_nodes();
    X2Stencil s;
    s.w.resize(ny);
    s.first.resize(ny);
    for (int j = 0; j < ny; ++j) {
        const int f = j == 0 ? 0 : (j == ny - 1 ? ny - 3 : j - 1);
        const auto w = fd_weights(x[j], x.subspan(f, 3), 1);
        s.first[j] = f;
        s.w[j] = {w[0], w[1], w[2]};
    }
    return s;
}

X2Stencil4 x2_second_derivative_stencil(const Grid& grid) {
    const int ny = grid.ny();
    const auto x = grid.x2_nodes();
    X2Stencil4 s;
    s.w.resize(ny);
    s.first.resize(ny);
    s.count.resize(ny);
    for (int j = 0; j < ny; ++j) {
        int f = j - 1;
        int cnt = 3;
        if (j == 0) { f = 0; cnt = 4; }
        if (j == ny - 1) { f = ny - 4; cnt = 4; }
        const auto w = fd_weights(x[j], x.subspan(f, cnt), 2);
        s.first[j] = f;
        s.count[j] = cnt;
        s.w[j] = {w[0], w[1], w[2], cnt == 4 ? w[3] : 0.0};
    }
    return s;
}

ScalarField d1(const ScalarField& f) {
    const int nx = f.nx();
    const double inv = 1.0 / (2.0 * f.grid().h1());
    ScalarField out(f.grid());
    for (int j = 0; j < f.ny(); ++j) {
        const auto r = f.row(j);
        auto o = out.row(j);
        for (int i = 0; i < nx; ++i) o[i] = (r[(i + 1) % nx] - r[(i + nx - 1) % nx]) * inv;
    }
    return out;
}

ScalarField d11(const ScalarField& f) {
    const int nx = f.nx();
    const double inv = 1.0 / (f.grid().h1() * f.grid().h1());
    ScalarField out(f.grid());
    for (int j = 0; j < f.ny(); ++j) {
        const auto r = f.row(j);
        auto o = out.row(j);
        for (int i = 0; i < nx; ++i) o[i] = (r[(i + 1) % nx] - 2.0 * r[i] + r[(i + nx - 1) % nx]) * inv;
    }
    return out;
}

ScalarField d2(const ScalarField& f) {
    const auto s = x2_first_derivative_stencil(f.grid());
    ScalarField out(f.grid());
    for (int j = 0; j < f.ny(); ++j) {
        auto o = out.row(j);
        for (int k = 0; k < 3; ++k) {
            const auto r = f.row(s.first[j] + k);
            const double w = s.w[j][k];
            for (int i = 0; i < f.nx(); ++i) o[i] += w * r[i];
        }
    }
    return out;
}

ScalarField d22(const ScalarField& f) {
    const auto s = x2_second_derivative_stencil(f.grid());
    ScalarField out(f.grid());
    for (int j = 0; j < f.ny(); ++j) {
        auto o = out.row(j);
        for (int k = 0; k < s.count[j]; ++k) {
            const auto r = f.row(s.first[j] + k);
            const double w = s.w[j][k];
            for (int i = 0; i < f.nx(); ++i) o[i] += w * r[i];
        }
    }
    return out;
}

VelocityField gradient(const ScalarField& f) { return VelocityField(d1(f), d2(f)); }

ScalarField divergence(const VelocityField& v) { return d1(v.u1) + d2(v.u2); }

ScalarField vorticity(const VelocityField& v) { return d2(v.u1) - d1(v.u2); }

ScalarField grad_squared(const VelocityField& v) {
    const ScalarField a = d1(v.u1);
    const ScalarField b = d2(v.u1);
    const ScalarField c = d1(v.u2);
    const ScalarField d = d2(v.u2);
    ScalarField out(v.grid());
    auto o = out.values();
    const auto av = a.values(), bv = b.values(), cv = c.values(), dv = d.values();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] = av[k] * av[k] + bv[k] * bv[k] + cv[k] * cv[k] + dv[k] * dv[k];
    return out;
}

}  // namespace vvlab
