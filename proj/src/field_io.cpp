#include "vvlab/field_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace vvlab {
namespace {

constexpr const char* kHeader = "i,j,x1,x2,value";

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

void write_field_csv(std::ostream& out, const ScalarField& f) {
    const Grid& g = f.grid();
    out << kHeader << '\n';
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            out << fmt::format("{},{},{:.17g},{:.17g},{:.17g}\n", i, j, g.x1(i), g.x2(j), f(i, j));
        }
    }
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    write_field_csv(out, f);
    if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

ScalarField read_field_csv(std::istream& in, const Grid& grid) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        throw std::runtime_error(fmt::format("field csv must start with '{}'", kHeader));
    }
    ScalarField f(grid);
    std::vector<char> seen(grid.size(), 0);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        int i = 0, j = 0;
        double x1 = 0, x2 = 0, v = 0;
        char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
        if (!(row >> i >> c1 >> j >> c2 >> x1 >> c3 >> x2 >> c4 >> v) || c1 != ',' || c2 != ',' || c3 != ',' ||
            c4 != ',') {
            throw std::runtime_error(fmt::format("field csv line {}: malformed row '{}'", lineno, line));
        }
        if (i < 0 || i >= grid.nx() || j < 0 || j >= grid.ny()) {
            throw std::runtime_error(fmt::format("field csv line {}: node ({},{}) outside grid", lineno, i, j));
        }
        if (!close(x1, grid.x1(i)) || !close(x2, grid.x2(j))) {
            throw std::runtime_error(fmt::format("field csv line {}: coordinates do not match grid", lineno));
        }
        const std::size_t k = static_cast<std::size_t>(j) * grid.nx() + i;
        if (seen[k]) throw std::runtime_error(fmt::format("field csv line {}: duplicate node ({},{})", lineno, i, j));
        seen[k] = 1;
        f(i, j) = v;
    }
    for (char s : seen) {
        if (!s) throw std::runtime_error("field csv is missing nodes");
    }
    return f;
}

ScalarField read_field_csv(const std::filesystem::path& path, const Grid& grid) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
    return read_field_csv(in, grid);
}

}  // namespace vvlab
