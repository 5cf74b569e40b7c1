#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "vvlab/sweep.hpp"

namespace vvlab {

/// Column headers of the CSV outputs, in file order.
std::vector<std::string> energy_csv_columns();
std::vector<std::string> criteria_csv_columns();
std::vector<std::string> assumptions_csv_columns();

std::string energy_csv(const Report& report);
std::string criteria_csv(const Report& report);
std::string assumptions_csv(const Report& report);
/// The full report as JSON (config echo, per-nu results, fits, constants).
std::string summary_json(const Report& report);

/// Inverse of summary_json.
Report report_from_json(const std::string& text);
Report load_report(const std::filesystem::path& summary);

/// Writes summary.json, energy.csv, criteria.csv, assumptions.csv and, when
/// `svg` is set, one fit_<name>.svg per fitted functional. Returns the paths
/// written. I/O failures throw with the offending path.
std::vector<std::filesystem::path> emit_outputs(const Report& report, const std::filesystem::path& dir, bool svg);

}  // namespace vvlab
