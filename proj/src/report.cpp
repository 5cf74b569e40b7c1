#include "vvlab/report.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "vvlab/svg_plot.hpp"

namespace vvlab {
namespace {

using json = nlohmann::ordered_json;

// ============================================================================
// Number formatting
// ============================================================================

/// Shortest round-trip text; identical across runs for identical values.
std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{}", v);
}

std::string flag(bool b) { return b ? "1" : "0"; }

std::string csv_text(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) s += ',';
        s += cells[k];
    }
    return s + "\n";
}

// JSON cannot hold inf/nan; they travel as strings.
json jnum(double v) {
    if (std::isfinite(v)) return v;
    return num(v);
}

double from_jnum(const json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
}

// ============================================================================
// JSON conversion
// ============================================================================

json to_json(const Functional& f) {
    return json{{"value", jnum(f.value)},
                {"min_layer_cells", jnum(f.min_layer_cells)},
                {"under_resolved", f.under_resolved},
                {"clipped", f.clipped}};
}

Functional functional_from(const json& j) {
    Functional f;
    f.value = from_jnum(j.at("value"));
    f.min_layer_cells = from_jnum(j.at("min_layer_cells"));
    f.under_resolved = j.at("under_resolved").get<bool>();
    f.clipped = j.at("clipped").get<bool>();
    return f;
}

json to_json(const EnergyBreakdown& e) {
    json j{{"t", jnum(e.t)},
           {"v_l2_sq", jnum(e.v_l2_sq)},
           {"dissipation", jnum(e.dissipation)},
           {"lin_stretch", jnum(e.lin_stretch)},
           {"lin_visc", jnum(e.lin_visc)}};
    for (int k = 0; k < 6; ++k) j[fmt::format("T{}", k + 1)] = jnum(e.T[k]);
    j["t6_nu"] = jnum(e.t6_nu);
    j["identity_residual"] = jnum(e.identity_residual);
    return j;
}

EnergyBreakdown energy_from(const json& j) {
    EnergyBreakdown e;
    e.t = from_jnum(j.at("t"));
    e.v_l2_sq = from_jnum(j.at("v_l2_sq"));
    e.dissipation = from_jnum(j.at("dissipation"));
    e.lin_stretch = from_jnum(j.at("lin_stretch"));
    e.lin_visc = from_jnum(j.at("lin_visc"));
    for (int k = 0; k < 6; ++k) e.T[k] = from_jnum(j.at(fmt::format("T{}", k + 1)));
    e.t6_nu = from_jnum(j.at("t6_nu"));
    e.identity_residual = from_jnum(j.at("identity_residual"));
    return e;
}

json to_json(const RateFit& f) {
    return json{{"status", to_string(f.status)},
                {"exponent", jnum(f.exponent)},
                {"log_prefactor", jnum(f.log_prefactor)},
                {"prefactor", jnum(f.prefactor())},
                {"r_squared", jnum(f.r_squared)},
                {"points_used", f.points_used},
                {"points_excluded", f.points_excluded}};
}

RateFit fit_from(const json& j) {
    RateFit f;
    const std::string status = j.at("status").get<std::string>();
    for (auto s : {FitStatus::ok, FitStatus::identically_zero, FitStatus::too_few_points}) {
        if (to_string(s) == status) f.status = s;
    }
    f.exponent = from_jnum(j.at("exponent"));
    f.log_prefactor = from_jnum(j.at("log_prefactor"));
    f.r_squared = from_jnum(j.at("r_squared"));
    f.points_used = j.at("points_used").get<int>();
    f.points_excluded = j.at("points_excluded").get<int>();
    return f;
}

json to_json(const NuResult& r, double nu0) {
    json j{{"nu", r.nu}, {"ok", r.ok}, {"error", r.error}};
    j["grid"] = json{{"nx", r.nx},
                     {"ny", r.ny},
                     {"height", jnum(r.height)},
                     {"first_cell", jnum(r.first_cell)},
                     {"grading", jnum(r.grading)},
                     {"truncation_tail", jnum(r.truncation_tail)}};
    j["solver"] = json{{"steps", r.solver.steps},
                       {"dt_min", jnum(r.solver.dt_min)},
                       {"dt_max", jnum(r.solver.dt_max)},
                       {"max_rk_identity_residual", jnum(r.solver.max_rk_identity_residual)},
                       {"clamped_steps", r.solver.clamped_steps}};
    j["sup_v_l2"] = jnum(r.sup_v_l2);
    j["sup_diff_l2"] = jnum(r.sup_diff_l2);
    j["identity_max"] = jnum(r.identity_max);
    j["criteria"] = json{{"kato", to_json(r.criteria.kato)},
                         {"kelliher", to_json(r.criteria.kelliher)},
                         {"temam_wang", to_json(r.criteria.temam_wang)},
                         {"bt", to_json(r.criteria.bt)},
                         {"ckv", to_json(r.criteria.ckv)}};
    json rows = json::array();
    for (const AssumptionRow& a : r.assumptions) {
        rows.push_back(json{{"rho", jnum(a.rho)},
                            {"E", jnum(a.E)},
                            {"I", jnum(a.I)},
                            {"B", jnum(a.B)},
                            {"I_mixed", jnum(a.I_mixed)},
                            {"B_mixed", jnum(a.B_mixed)},
                            {"B_over_nu0", jnum(nu0 > 0.0 ? a.B / nu0 : 0.0)},
                            {"cells", jnum(a.cells)},
                            {"under_resolved", a.under_resolved}});
    }
    j["assumptions"] = rows;
    j["wang"] = json{{"wang_integral", jnum(r.wang.wang_integral)}, {"layer_sup", to_json(r.wang.layer_sup)}};
    j["t6_split"] = json{{"rho", jnum(r.t6.rho)},
                         {"inner", jnum(r.t6.inner)},
                         {"outer", jnum(r.t6.outer)},
                         {"outer_bound", jnum(r.t6.outer_bound)}};
    json energy = json::array();
    for (const EnergyBreakdown& e : r.energy) energy.push_back(to_json(e));
    j["energy"] = energy;
    return j;
}

NuResult result_from(const json& j) {
    NuResult r;
    r.nu = j.at("nu").get<double>();
    r.ok = j.at("ok").get<bool>();
    r.error = j.at("error").get<std::string>();
    const json& g = j.at("grid");
    r.nx = g.at("nx").get<int>();
    r.ny = g.at("ny").get<int>();
    r.height = from_jnum(g.at("height"));
    r.first_cell = from_jnum(g.at("first_cell"));
    r.grading = from_jnum(g.at("grading"));
    r.truncation_tail = from_jnum(g.at("truncation_tail"));
    const json& s = j.at("solver");
    r.solver.steps = s.at("steps").get<std::int64_t>();
    r.solver.dt_min = from_jnum(s.at("dt_min"));
    r.solver.dt_max = from_jnum(s.at("dt_max"));
    r.solver.max_rk_identity_residual = from_jnum(s.at("max_rk_identity_residual"));
    r.solver.clamped_steps = s.at("clamped_steps").get<std::int64_t>();
    r.sup_v_l2 = from_jnum(j.at("sup_v_l2"));
    r.sup_diff_l2 = from_jnum(j.at("sup_diff_l2"));
    r.identity_max = from_jnum(j.at("identity_max"));
    const json& c = j.at("criteria");
    r.criteria.kato = functional_from(c.at("kato"));
    r.criteria.kelliher = functional_from(c.at("kelliher"));
    r.criteria.temam_wang = functional_from(c.at("temam_wang"));
    r.criteria.bt = functional_from(c.at("bt"));
    r.criteria.ckv = functional_from(c.at("ckv"));
    for (const json& a : j.at("assumptions")) {
        AssumptionRow row;
        row.rho = from_jnum(a.at("rho"));
        row.E = from_jnum(a.at("E"));
        row.I = from_jnum(a.at("I"));
        row.B = from_jnum(a.at("B"));
        row.I_mixed = from_jnum(a.at("I_mixed"));
        row.B_mixed = from_jnum(a.at("B_mixed"));
        row.cells = from_jnum(a.at("cells"));
        row.under_resolved = a.at("under_resolved").get<bool>();
        r.assumptions.push_back(row);
    }
    r.wang.wang_integral = from_jnum(j.at("wang").at("wang_integral"));
    r.wang.layer_sup = functional_from(j.at("wang").at("layer_sup"));
    const json& t6 = j.at("t6_split");
    r.t6 = {from_jnum(t6.at("rho")), from_jnum(t6.at("inner")), from_jnum(t6.at("outer")),
            from_jnum(t6.at("outer_bound"))};
    for (const json& e : j.at("energy")) r.energy.push_back(energy_from(e));
    return r;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    out << text;
    out.close();
    if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

std::string file_stem(const std::string& name) {
    std::string s;
    for (char c : name) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
        s += keep ? c : '_';
    }
    return s;
}

}  // namespace

// ============================================================================
// CSV
// ============================================================================

std::vector<std::string> energy_csv_columns() {
    return {"nu",  "t",  "v_l2_sq", "dissipation", "lin_stretch", "lin_visc", "T1",
            "T2",  "T3", "T4",      "T5",          "T6",          "t6_nu",    "identity_residual"};
}

std::vector<std::string> criteria_csv_columns() {
    return {"nu",
            "ok",
            "kato",
            "kato_layer_cells",
            "kelliher",
            "temam_wang",
            "temam_wang_layer_cells",
            "bt",
            "ckv",
            "ckv_layer_cells",
            "wang_integral",
            "layer_sup",
            "layer_sup_clipped",
            "under_resolved",
            "sup_v_l2",
            "sup_diff_l2",
            "identity_max",
            "t6_rho",
            "t6_inner",
            "t6_outer",
            "t6_outer_bound",
            "nx",
            "ny",
            "first_cell",
            "truncation_tail",
            "steps",
            "dt_min",
            "dt_max",
            "error"};
}

std::vector<std::string> assumptions_csv_columns() {
    return {"nu", "rho", "E", "I", "B", "I_mixed", "B_mixed", "B_over_nu0", "layer_cells", "under_resolved"};
}

std::string energy_csv(const Report& report) {
    std::string s = join(energy_csv_columns());
    for (const NuResult& r : report.results) {
        for (const EnergyBreakdown& e : r.energy) {
            std::vector<std::string> row{num(r.nu), num(e.t), num(e.v_l2_sq), num(e.dissipation),
                                         num(e.lin_stretch), num(e.lin_visc)};
            for (double T : e.T) row.push_back(num(T));
            row.push_back(num(e.t6_nu));
            row.push_back(num(e.identity_residual));
            s += join(row);
        }
    }
    return s;
}

std::string criteria_csv(const Report& report) {
    std::string s = join(criteria_csv_columns());
    for (const NuResult& r : report.results) {
        const CriteriaReport& c = r.criteria;
        const bool under = c.kato.under_resolved || c.kelliher.under_resolved || c.temam_wang.under_resolved ||
                           c.ckv.under_resolved || r.wang.layer_sup.under_resolved;
        s += join({num(r.nu),
                   flag(r.ok),
                   num(c.kato.value),
                   num(c.kato.min_layer_cells),
                   num(c.kelliher.value),
                   num(c.temam_wang.value),
                   num(c.temam_wang.min_layer_cells),
                   num(c.bt.value),
                   num(c.ckv.value),
                   num(c.ckv.min_layer_cells),
                   num(r.wang.wang_integral),
                   num(r.wang.layer_sup.value),
                   flag(r.wang.layer_sup.clipped),
                   flag(under),
                   num(r.sup_v_l2),
                   num(r.sup_diff_l2),
                   num(r.identity_max),
                   num(r.t6.rho),
                   num(r.t6.inner),
                   num(r.t6.outer),
                   num(r.t6.outer_bound),
                   fmt::format("{}", r.nx),
                   fmt::format("{}", r.ny),
                   num(r.first_cell),
                   num(r.truncation_tail),
                   fmt::format("{}", r.solver.steps),
                   num(r.solver.dt_min),
                   num(r.solver.dt_max),
                   csv_text(r.error)});
    }
    return s;
}

std::string assumptions_csv(const Report& report) {
    const double nu0 = report.config.nu0();
    std::string s = join(assumptions_csv_columns());
    for (const NuResult& r : report.results) {
        for (const AssumptionRow& a : r.assumptions) {
            s += join({num(r.nu), num(a.rho), num(a.E), num(a.I), num(a.B), num(a.I_mixed), num(a.B_mixed),
                       num(nu0 > 0.0 ? a.B / nu0 : 0.0), num(a.cells), flag(a.under_resolved)});
        }
    }
    return s;
}

// ============================================================================
// JSON summary
// ============================================================================

std::string summary_json(const Report& report) {
    json j;
    json cfg = json::object();
    for (const auto& [k, v] : report.config.echo()) cfg[k] = v;
    j["config"] = cfg;
    j["nu0"] = report.config.nu0();
    j["constants"] = json{{"c_eta", jnum(report.c_eta)}};

    json fits = json::object();
    for (const NamedFit& f : report.fits) fits[f.name] = to_json(f.fit);
    j["fits"] = fits;

    // Uniformity proxy: sup over the sweep of each layer modulus.
    json uniform = json::array();
    for (std::size_t k = 0; k < report.config.rho_list.size(); ++k) {
        double E = 0.0, I = 0.0, B = 0.0;
        for (const NuResult& r : report.results) {
            if (!r.ok || k >= r.assumptions.size()) continue;
            E = std::max(E, r.assumptions[k].E);
            I = std::max(I, r.assumptions[k].I);
            B = std::max(B, r.assumptions[k].B);
        }
        uniform.push_back(json{{"rho", report.config.rho_list[k]}, {"sup_E", E}, {"sup_I", I}, {"sup_B", B}});
    }
    j["uniformity"] = uniform;

    json quarantined = json::array();
    for (const NuResult& r : report.results) {
        if (!r.ok) quarantined.push_back(json{{"nu", r.nu}, {"error", r.error}});
    }
    j["quarantined"] = quarantined;

    json results = json::array();
    for (const NuResult& r : report.results) results.push_back(to_json(r, report.config.nu0()));
    j["results"] = results;
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        Report report;
        std::string cfg;
        for (const auto& [k, v] : j.at("config").items()) cfg += fmt::format("{} = {}\n", k, v.get<std::string>());
        report.config = parse_config(cfg);
        report.c_eta = from_jnum(j.at("constants").at("c_eta"));
        for (const auto& [name, f] : j.at("fits").items()) report.fits.push_back({name, fit_from(f)});
        for (const json& r : j.at("results")) report.results.push_back(result_from(r));
        return report;
    } catch (const json::exception& e) {
        throw std::runtime_error(fmt::format("malformed summary: {}", e.what()));
    }
}

Report load_report(const std::filesystem::path& summary) {
    std::ifstream in(summary, std::ios::binary);
    if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", summary.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return report_from_json(ss.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(fmt::format("{}: {}", summary.string(), e.what()));
    }
}

// ============================================================================
// Files
// ============================================================================

std::vector<std::filesystem::path> emit_outputs(const Report& report, const std::filesystem::path& dir, bool svg) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

    std::vector<std::filesystem::path> written;
    auto put = [&](const std::string& name, const std::string& text) {
        write_file(dir / name, text);
        written.push_back(dir / name);
    };
    put("summary.json", summary_json(report));
    put("energy.csv", energy_csv(report));
    put("criteria.csv", criteria_csv(report));
    put("assumptions.csv", assumptions_csv(report));
    if (!svg) return written;

    // One plot per series; the fit drawn is the one stored in the report.
    for (const FitSeries& series : fit_series(report.results, report.config.rho_list)) {
        RateFit fit = fit_series_rate(series);
        for (const NamedFit& f : report.fits) {
            if (f.name == series.name) fit = f.fit;
        }
        if (fit.status == FitStatus::identically_zero) continue;
        put("fit_" + file_stem(series.name) + ".svg", loglog_svg(series.name, series.points, fit));
    }
    return written;
}

}  // namespace vvlab
