#include "vvlab/grid.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace vvlab {

std::string to_string(TopBoundary bc) {
    return bc == TopBoundary::free_slip ? "free_slip" : "no_slip";
}

TopBoundary top_boundary_from_string(const std::string& name) {
    if (name == "free_slip") return TopBoundary::free_slip;
    if (name == "no_slip") return TopBoundary::no_slip;
    throw std::invalid_argument(fmt::format("unknown top boundary '{}' (free_slip|no_slip)", name));
}

Grid::Grid(int nx, int ny, double length_x1, double height_x2, TopBoundary top_bc,
           double grading) {
    if (nx < 8) throw std::invalid_argument(fmt::format("grid needs nx >= 8, got {}", nx));
    if (ny < 8) throw std::invalid_argument(fmt::format("grid needs ny >= 8, got {}", ny));
    if (!(length_x1 > 0.0) || !(height_x2 > 0.0)) {
        throw std::invalid_argument("grid extents must be positive");
    }
    if (!(grading >= 1.0) || !std::isfinite(grading)) {
        throw std::invalid_argument(fmt::format("grading ratio must be >= 1, got {}", grading));
    }

    Data d{nx, ny, length_x1, height_x2, top_bc, grading, {}, {}};
    d.x2.resize(ny);
    const int cells = ny - 1;
    if (grading == 1.0) {
        const double h = height_x2 / cells;
        for (int j = 0; j < ny; ++j) d.x2[j] = j * h;
    } else {
        // x2_j = L (r^j - 1) / (r^cells - 1)
        const double denom = std::expm1(cells * std::log(grading));
        for (int j = 0; j < ny; ++j) d.x2[j] = height_x2 * std::expm1(j * std::log(grading)) / denom;
    }
    d.x2.front() = 0.0;
    d.x2.back() = height_x2;

    d.w2.assign(ny, 0.0);
    for (int j = 0; j + 1 < ny; ++j) {
        const double h = d.x2[j + 1] - d.x2[j];
        if (!(h > 0.0)) throw std::invalid_argument("grid spacing collapsed; grading too strong");
        d.w2[j] += 0.5 * h;
        d.w2[j + 1] += 0.5 * h;
    }
    data_ = std::make_shared<const Data>(std::move(d));
}

Grid Grid::with_first_cell(int nx, int ny, double length_x1, double height_x2,
                           TopBoundary top_bc, double first_cell) {
    const int cells = ny - 1;
    if (!(first_cell > 0.0)) throw std::invalid_argument("first cell width must be positive");
    if (first_cell * cells >= height_x2) return Grid(nx, ny, length_x1, height_x2, top_bc, 1.0);

    // Solve h0 (r^cells - 1) / (r - 1) = L for r > 1 by bisection on log r.
    const double target = height_x2 / first_cell;
    auto span_of = [cells](double r) { return std::expm1(cells * std::log(r)) / (r - 1.0); };
    double lo = 1.0 + 1e-12;
    double hi = 2.0;
    while (span_of(hi) < target) hi = 1.0 + 2.0 * (hi - 1.0);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (span_of(mid) < target ? lo : hi) = mid;
    }
    return Grid(nx, ny, length_x1, height_x2, top_bc, 0.5 * (lo + hi));
}

Grid Grid::refined() const {
    const int ny2 = 2 * ny();
    double r = grading();
    if (r != 1.0) {
        // keep r^(cells-1) fixed
        r = std::exp(std::log(r) * (ny() - 2) / static_cast<double>(ny2 - 2));
    }
    return Grid(2 * nx(), ny2, length_x1(), height_x2(), top_bc(), r);
}

bool Grid::operator==(const Grid& other) const noexcept {
    if (data_ == other.data_) return true;
    return nx() == other.nx() && ny() == other.ny() && length_x1() == other.length_x1() &&
           height_x2() == other.height_x2() && top_bc() == other.top_bc() &&
           grading() == other.grading();
}

}  // namespace vvlab
