#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vvlab/grid.hpp"

namespace vvlab {

/// Real values at the grid nodes, stored row by row (x1 fastest).
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(Grid grid, double fill = 0.0);
    ScalarField(Grid grid, std::vector<double> values);

    /// Samples f(x1, x2) at every node.
    static ScalarField sample(const Grid& grid, const std::function<double(double, double)>& f);
    /// Outer product a(x1_i) * b(x2_j).
    static ScalarField separable(const Grid& grid, std::span<const double> along_x1,
                                 std::span<const double> along_x2);

    const Grid& grid() const noexcept { return grid_; }
    int nx() const noexcept { return grid_.nx(); }
    int ny() const noexcept { return grid_.ny(); }

    double& operator()(int i, int j) noexcept { return values_[index(i, j)]; }
    double operator()(int i, int j) const noexcept { return values_[index(i, j)]; }

    std::span<double> values() noexcept { return values_; }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> row(int j) noexcept { return {values_.data() + index(0, j), static_cast<std::size_t>(nx())}; }
    std::span<const double> row(int j) const noexcept {
        return {values_.data() + index(0, j), static_cast<std::size_t>(nx())};
    }

    bool all_finite() const noexcept;
    double max_abs() const noexcept;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s) noexcept;

private:
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(grid_.nx()) +
               static_cast<std::size_t>(i);
    }
    void require_same_grid(const ScalarField& other) const;

    Grid grid_{8, 8};
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);

/// Collocated velocity components.
struct VelocityField {
    ScalarField u1;
    ScalarField u2;

    explicit VelocityField(const Grid& grid) : u1(grid), u2(grid) {}
    VelocityField(ScalarField a, ScalarField b);

    const Grid& grid() const noexcept { return u1.grid(); }
};

}  // namespace vvlab
