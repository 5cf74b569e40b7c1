#include "vvlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace vvlab {

ScalarField::ScalarField(Grid grid, double fill) : grid_(std::move(grid)), values_(grid_.size(), fill) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument(fmt::format("field has {} values, grid {}x{} needs {}",
                                                values_.size(), grid_.nx(), grid_.ny(), grid_.size()));
    }
}

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(double, double)>& f) {
    ScalarField out(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        const double x2 = grid.x2(j);
        for (int i = 0; i < grid.nx(); ++i) out(i, j) = f(grid.x1(i), x2);
    }
    return out;
}

ScalarField ScalarField::separable(const Grid& grid, std::span<const double> along_x1,
                                   std::span<const double> along_x2) {
    if (along_x1.size() != static_cast<std::size_t>(grid.nx()) ||
        along_x2.size() != static_cast<std::size_t>(grid.ny())) {
        throw std::invalid_argument("separable factors do not match the grid");
    }
    ScalarField out(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) out(i, j) = along_x1[i] * along_x2[j];
    }
    return out;
}

bool ScalarField::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double ScalarField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

void ScalarField::require_same_grid(const ScalarField& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("fields live on different grids");
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
    ScalarField out(a.grid());
    auto av = a.values();
    auto bv = b.values();
    auto ov = out.values();
    for (std::size_t k = 0; k < ov.size(); ++k) ov[k] = av[k] * bv[k];
    return out;
}

VelocityField::VelocityField(ScalarField a, ScalarField b) : u1(std::move(a)), u2(std::move(b)) {
    if (!(u1.grid() == u2.grid())) throw std::invalid_argument("velocity components on different grids");
}

}  // namespace vvlab
