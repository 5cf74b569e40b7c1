#pragma once

#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace vvlab {

enum class TopBoundary { free_slip, no_slip };

std::string to_string(TopBoundary bc);
TopBoundary top_boundary_from_string(const std::string& name);

/// Node grid on the periodic half-strip [0, length_x1) x [0, height_x2].
///
/// Nodes sit at (i*h1, x2_j). The wall is the row j = 0 with x2 = 0 exactly,
/// the top row j = ny-1 sits at x2 = height_x2. In x2 the spacing is either
/// uniform (grading == 1) or geometric, with each cell `grading` times wider
/// than the one below it.
///
/// Grid is a cheap value type: coordinates live in a shared immutable block.
class Grid {
public:
    Grid(int nx, int ny,
         double length_x1 = 2.0 * std::numbers::pi,
         double height_x2 = 4.0,
         TopBoundary top_bc = TopBoundary::free_slip,
         double grading = 1.0);

    /// Geometric grid whose first wall cell has width `first_cell`.
    static Grid with_first_cell(int nx, int ny, double length_x1, double height_x2,
                                TopBoundary top_bc, double first_cell);

    int nx() const noexcept { return data_->nx; }
    int ny() const noexcept { return data_->ny; }
    double length_x1() const noexcept { return data_->length_x1; }
    double height_x2() const noexcept { return data_->height_x2; }
    TopBoundary top_bc() const noexcept { return data_->top_bc; }
    double grading() const noexcept { return data_->grading; }
    bool uniform() const noexcept { return data_->grading == 1.0; }

    double h1() const noexcept { return data_->length_x1 / data_->nx; }
    /// Width of the wall cell (the uniform spacing when grading == 1).
    double h2() const noexcept { return data_->x2[1]; }
    /// Width of the cell [x2_j, x2_{j+1}].
    double cell(int j) const { return data_->x2[j + 1] - data_->x2[j]; }
    double min_h2() const noexcept { return h2(); }
    double max_h2() const noexcept { return cell(ny() - 2); }

    double x1(int i) const noexcept { return i * h1(); }
    double x2(int j) const noexcept { return data_->x2[j]; }
    std::span<const double> x2_nodes() const noexcept { return data_->x2; }
    /// Trapezoid weights in x2 over the full height.
    std::span<const double> x2_weights() const noexcept { return data_->w2; }

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny());
    }
    double area() const noexcept { return length_x1() * height_x2(); }

    /// Doubles nx and ny. The total stretch (top cell / wall cell) of a graded
    /// grid is kept, so successive refinements sample the same mapping.
    Grid refined() const;

    bool operator==(const Grid& other) const noexcept;

private:
    struct Data {
        int nx;
        int ny;
        double length_x1;
        double height_x2;
        TopBoundary top_bc;
        double grading;
        std::vector<double> x2;
        std::vector<double> w2;
    };
    std::shared_ptr<const Data> data_;
};

}  // namespace vvlab
