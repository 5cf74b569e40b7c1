#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "vvlab/solver.hpp"

namespace vvlab {

/// 64-bit FNV-1a hash, used to tag snapshots with the configuration that
/// produced them.
std::uint64_t fnv1a64(const std::string& text);

/// Writes omega.csv, psi.csv, u1.csv, u2.csv (field CSV format) and meta.json
/// (nu, t, flux, grid, config hash) into `dir`, creating it if needed.
void write_snapshot(const std::filesystem::path& dir, const Snapshot& snap, std::uint64_t config_hash = 0);

/// Reads a snapshot written by write_snapshot.
Snapshot load_snapshot(const std::filesystem::path& dir);

/// The config hash recorded in a snapshot's metadata.
std::uint64_t snapshot_config_hash(const std::filesystem::path& dir);

}  // namespace vvlab
