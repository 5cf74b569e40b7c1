#pragma once

#include <filesystem>
#include <iosfwd>

#include "vvlab/field.hpp"

namespace vvlab {

/// Writes `i,j,x1,x2,value` rows (i outer, j inner) with 17 significant digits.
void write_field_csv(std::ostream& out, const ScalarField& f);
void write_field_csv(const std::filesystem::path& path, const ScalarField& f);

/// Reads a field written by write_field_csv onto `grid`. Every node must be
/// present exactly once and its coordinates must match the grid.
ScalarField read_field_csv(std::istream& in, const Grid& grid);
ScalarField read_field_csv(const std::filesystem::path& path, const Grid& grid);

}  // namespace vvlab
