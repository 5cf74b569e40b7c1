#include "vvlab/snapshot.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "vvlab/field_io.hpp"

namespace vvlab {
namespace {

using nlohmann::json;

json read_meta(const std::filesystem::path& dir) {
    const auto path = dir / "meta.json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot open snapshot metadata '{}'", path.string()));
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(fmt::format("malformed snapshot metadata '{}': {}", path.string(), e.what()));
    }
}

}  // namespace

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_snapshot(const std::filesystem::path& dir, const Snapshot& snap, std::uint64_t config_hash) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error(fmt::format("cannot create snapshot directory '{}': {}", dir.string(), ec.message()));
    write_field_csv(dir / "omega.csv", snap.omega);
    write_field_csv(dir / "psi.csv", snap.psi);
    write_field_csv(dir / "u1.csv", snap.u.u1);
    write_field_csv(dir / "u2.csv", snap.u.u2);

    const Grid& g = snap.omega.grid();
    json meta;
    meta["nu"] = snap.nu;
    meta["t"] = snap.t;
    meta["flux"] = snap.flux;
    meta["grid"] = {{"nx", g.nx()},
                    {"ny", g.ny()},
                    {"length_x1", g.length_x1()},
                    {"height_x2", g.height_x2()},
                    {"top_bc", to_string(g.top_bc())},
                    {"grading", g.grading()}};
    meta["config_hash"] = fmt::format("{:016x}", config_hash);
    const auto path = dir / "meta.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out << meta.dump(2) << '\n';
}

Snapshot load_snapshot(const std::filesystem::path& dir) {
    const json meta = read_meta(dir);
    try {
        const json& g = meta.at("grid");
        const Grid grid(g.at("nx").get<int>(), g.at("ny").get<int>(), g.at("length_x1").get<double>(),
                        g.at("height_x2").get<double>(), top_boundary_from_string(g.at("top_bc").get<std::string>()),
                        g.at("grading").get<double>());
        VelocityField u(read_field_csv(dir / "u1.csv", grid), read_field_csv(dir / "u2.csv", grid));
        return Snapshot(meta.at("t").get<double>(), meta.at("nu").get<double>(), meta.at("flux").get<double>(),
                        read_field_csv(dir / "omega.csv", grid), read_field_csv(dir / "psi.csv", grid), std::move(u));
    } catch (const json::exception& e) {
        throw std::runtime_error(fmt::format("snapshot metadata in '{}' is incomplete: {}", dir.string(), e.what()));
    }
}

std::uint64_t snapshot_config_hash(const std::filesystem::path& dir) {
    const json meta = read_meta(dir);
    return std::stoull(meta.at("config_hash").get<std::string>(), nullptr, 16);
}

}  // namespace vvlab
