#include "vvlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace vvlab {
namespace {

void require_finite(const ScalarField& f) {
    if (!f.all_finite()) throw std::invalid_argument("field contains non-finite values");
}

void require_exponent(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument(fmt::format("norm exponent must be >= 1, got {}", p));
}

double value_at_cut(const ScalarField& f, const LayerCut& cut, int i) {
    if (!cut.partial()) return f(i, cut.last);
    const double a = f(i, cut.last);
    const double b = f(i, cut.last + 1);
    return a + (b - a) * cut.fraction;
}

// Trapezoid integral of g over [0, rho] for column i; g maps a field value to
// the integrand (identity, |.|^p, ...).
template <class G>
double column_integral_below(const ScalarField& f, const LayerCut& cut, int i, G g) {
    const Grid& grid = f.grid();
    double s = 0.0;
    for (int j = 0; j < cut.last; ++j) s += 0.5 * grid.cell(j) * (g(f(i, j)) + g(f(i, j + 1)));
    if (cut.partial()) {
        const double width = cut.rho - grid.x2(cut.last);
        s += 0.5 * width * (g(f(i, cut.last)) + g(value_at_cut(f, cut, i)));
    }
    return s;
}

}  // namespace

LayerCut layer_cut(const Grid& grid, double rho) {
    LayerCut cut;
    const auto x2 = grid.x2_nodes();
    cut.rho = std::clamp(rho, 0.0, grid.height_x2());
    if (cut.rho >= grid.height_x2()) {
        cut.last = grid.ny() - 1;
        cut.fraction = 0.0;
        return cut;
    }
    const auto it = std::upper_bound(x2.begin(), x2.end(), cut.rho);
    cut.last = static_cast<int>(it - x2.begin()) - 1;
    cut.fraction = (cut.rho - x2[cut.last]) / (x2[cut.last + 1] - x2[cut.last]);
    return cut;
}

double integrate(const ScalarField& f) {
    const Grid& grid = f.grid();
    const auto w = grid.x2_weights();
    double s = 0.0;
    for (int j = 0; j < grid.ny(); ++j) {
        double row = 0.0;
        for (double v : f.row(j)) row += v;
        s += w[j] * row;
    }
    return s * grid.h1();
}

double integrate_below(const ScalarField& f, double rho) {
    const LayerCut cut = layer_cut(f.grid(), rho);
    double s = 0.0;
    for (int i = 0; i < f.nx(); ++i) s += column_integral_below(f, cut, i, [](double v) { return v; });
    return s * f.grid().h1();
}

double integrate_above(const ScalarField& f, double rho) {
    const Grid& grid = f.grid();
    const LayerCut cut = layer_cut(grid, rho);
    double s = 0.0;
    for (int i = 0; i < f.nx(); ++i) {
        double col = 0.0;
        int first = cut.last;
        if (cut.partial()) {
            const double width = grid.x2(cut.last + 1) - cut.rho;
            col += 0.5 * width * (value_at_cut(f, cut, i) + f(i, cut.last + 1));
            first = cut.last + 1;
        }
        for (int j = first; j + 1 < grid.ny(); ++j) col += 0.5 * grid.cell(j) * (f(i, j) + f(i, j + 1));
        s += col;
    }
    return s * grid.h1();
}

double lp_norm(const ScalarField& f, double p) {
    require_exponent(p);
    require_finite(f);
    if (std::isinf(p)) return f.max_abs();
    const Grid& grid = f.grid();
    const auto w = grid.x2_weights();
    double s = 0.0;
    for (int j = 0; j < grid.ny(); ++j) {
        double row = 0.0;
        for (double v : f.row(j)) row += std::pow(std::abs(v), p);
        s += w[j] * row;
    }
    return std::pow(s * grid.h1(), 1.0 / p);
}

std::vector<double> column_layer_norms(const ScalarField& f, double rho, double p_x2) {
    require_exponent(p_x2);
    require_finite(f);
    if (!(rho > 0.0)) throw std::invalid_argument(fmt::format("layer thickness must be positive, got {}", rho));
    const LayerCut cut = layer_cut(f.grid(), rho);
    std::vector<double> out(f.nx(), 0.0);
    for (int i = 0; i < f.nx(); ++i) {
        if (std::isinf(p_x2)) {
            double m = std::abs(value_at_cut(f, cut, i));
            for (int j = 0; j <= cut.last; ++j) m = std::max(m, std::abs(f(i, j)));
            out[i] = m;
        } else if (p_x2 == 1.0) {
            out[i] = column_integral_below(f, cut, i, [](double v) { return std::abs(v); });
        } else {
            const double s = column_integral_below(f, cut, i, [p_x2](double v) { return std::pow(std::abs(v), p_x2); });
            out[i] = std::pow(s, 1.0 / p_x2);
        }
    }
    return out;
}

double x1_norm(const std::vector<double>& values, double h1, double p) {
    require_exponent(p);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : values) s += std::pow(std::abs(v), p);
    return std::pow(s * h1, 1.0 / p);
}

double layer_norm(const ScalarField& f, double rho, double p_x1, double p_x2) {
    require_exponent(p_x1);
    return x1_norm(column_layer_norms(f, rho, p_x2), f.grid().h1(), p_x1);
}

}  // namespace vvlab
