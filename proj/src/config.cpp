#include "vvlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "vvlab/euler_flow.hpp"

namespace vvlab {
namespace {

enum class Type { real, integer, boolean, text, real_list };

const char* type_name(Type t) {
    switch (t) {
        case Type::real: return "a real number";
        case Type::integer: return "an integer";
        case Type::boolean: return "true or false";
        case Type::text: return "a string";
        case Type::real_list: return "a list of real numbers [a, b, ...]";
    }
    return "?";
}

struct Value {
    Type type = Type::real;
    double real = 0.0;
    long integer = 0;
    bool boolean = false;
    std::string text;
    std::vector<double> list;
};

struct Key {
    std::string name;
    Type type;
    std::function<void(SweepConfig&, const Value&)> set;
    std::function<std::string(const SweepConfig&)> get;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_real(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data() + (s.front() == '+' ? 1 : 0);
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::string real_text(double v) { return fmt::format("{}", v); }

std::string list_text(const std::vector<double>& v) {
    std::vector<std::string> parts;
    for (double x : v) parts.push_back(real_text(x));
    return fmt::format("[{}]", fmt::join(parts, ", "));
}

Value parse_value(const std::string& key, Type type, const std::string& raw, int line) {
    Value v;
    v.type = type;
    auto mismatch = [&]() {
        return ConfigError(fmt::format("line {}: '{}' expects {}, got '{}'", line, key, type_name(type), raw), line);
    };
    switch (type) {
        case Type::real:
            if (!parse_real(raw, v.real)) throw mismatch();
            break;
        case Type::integer: {
            const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v.integer);
            if (raw.empty() || ec != std::errc() || ptr != raw.data() + raw.size()) throw mismatch();
            break;
        }
        case Type::boolean:
            if (raw == "true") v.boolean = true;
            else if (raw == "false") v.boolean = false;
            else throw mismatch();
            break;
        case Type::text:
            v.text = raw;
            if (v.text.size() >= 2 && v.text.front() == '"' && v.text.back() == '"') {
                v.text = v.text.substr(1, v.text.size() - 2);
            }
            break;
        case Type::real_list: {
            if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']') throw mismatch();
            const std::string body = trim(std::string_view(raw).substr(1, raw.size() - 2));
            if (body.empty()) break;
            std::stringstream ss(body);
            std::string item;
            while (std::getline(ss, item, ',')) {
                double x = 0.0;
                if (!parse_real(trim(item), x)) throw mismatch();
                v.list.push_back(x);
            }
            break;
        }
    }
    return v;
}

Key real_key(std::string name, double SweepConfig::*field) {
    return {std::move(name), Type::real, [field](SweepConfig& c, const Value& v) { c.*field = v.real; },
            [field](const SweepConfig& c) { return real_text(c.*field); }};
}

Key int_key(std::string name, int SweepConfig::*field) {
    return {std::move(name), Type::integer,
            [field, name](SweepConfig& c, const Value& v) {
                if (v.integer < -1000000000L || v.integer > 1000000000L) {
                    throw std::invalid_argument(fmt::format("'{}' is out of range", name));
                }
                c.*field = static_cast<int>(v.integer);
            },
            [field](const SweepConfig& c) { return std::to_string(c.*field); }};
}

Key list_key(std::string name, std::vector<double> SweepConfig::*field) {
    return {std::move(name), Type::real_list, [field](SweepConfig& c, const Value& v) { c.*field = v.list; },
            [field](const SweepConfig& c) { return list_text(c.*field); }};
}

template <class E>
Key enum_key(std::string name, E SweepConfig::*field, E (*from)(const std::string&)) {
    return {std::move(name), Type::text, [field, from](SweepConfig& c, const Value& v) { c.*field = from(v.text); },
            [field](const SweepConfig& c) { return to_string(c.*field); }};
}

const std::vector<Key>& schema() {
    static const std::vector<Key> keys = [] {
        std::vector<Key> k;
        k.push_back(enum_key("sweep.scenario", &SweepConfig::scenario, &scenario_from_string));
        k.push_back(list_key("sweep.nu", &SweepConfig::nu_list));
        k.push_back(real_key("flow.U0", &SweepConfig::U0));
        k.push_back(real_key("flow.amplitude", &SweepConfig::amplitude));
        k.push_back(int_key("flow.mode", &SweepConfig::mode));
        k.push_back(real_key("domain.L1", &SweepConfig::L1));
        k.push_back(real_key("domain.L2", &SweepConfig::L2));
        k.push_back(enum_key("domain.top", &SweepConfig::top, &top_boundary_from_string));
        k.push_back(enum_key("grid.policy", &SweepConfig::grid_policy, &grid_policy_from_string));
        k.push_back(int_key("grid.nx", &SweepConfig::nx));
        k.push_back(int_key("grid.ny", &SweepConfig::ny));
        k.push_back(real_key("grid.stretch", &SweepConfig::stretch));
        k.push_back(real_key("grid.cells_per_layer", &SweepConfig::cells_per_layer));
        k.push_back(real_key("grid.kato_cells", &SweepConfig::kato_cells));
        k.push_back(real_key("solver.cfl", &SweepConfig::cfl));
        k.push_back(real_key("solver.diffusion_safety", &SweepConfig::diffusion_safety));
        k.push_back(enum_key("corrector.scale", &SweepConfig::scale, &scale_kind_from_string));
        k.push_back(real_key("corrector.a", &SweepConfig::a));
        k.push_back(real_key("criteria.C", &SweepConfig::C));
        k.push_back(real_key("criteria.temam_wang_b", &SweepConfig::temam_wang_b));
        k.push_back(real_key("criteria.ckv_a", &SweepConfig::ckv_a));
        k.push_back(real_key("criteria.wang_a", &SweepConfig::wang_a));
        k.push_back(real_key("criteria.wang_c", &SweepConfig::wang_c));
        k.push_back(list_key("criteria.rho", &SweepConfig::rho_list));
        k.push_back(real_key("criteria.t6_rho", &SweepConfig::t6_rho));
        k.push_back(real_key("time.t_min", &SweepConfig::t_min));
        k.push_back(real_key("time.T", &SweepConfig::T));
        k.push_back(int_key("time.samples", &SweepConfig::samples));
        k.push_back({"replay.dir", Type::text, [](SweepConfig& c, const Value& v) { c.replay_dir = v.text; },
                     [](const SweepConfig& c) { return fmt::format("\"{}\"", c.replay_dir); }});
        k.push_back(enum_key("replay.flow", &SweepConfig::replay_flow, &scenario_from_string));
        k.push_back({"output.dir", Type::text, [](SweepConfig& c, const Value& v) { c.out_dir = v.text; },
                     [](const SweepConfig& c) { return fmt::format("\"{}\"", c.out_dir); }});
        k.push_back({"output.svg", Type::boolean, [](SweepConfig& c, const Value& v) { c.svg = v.boolean; },
                     [](const SweepConfig& c) { return std::string(c.svg ? "true" : "false"); }});
        return k;
    }();
    return keys;
}

ConfigError invalid(const std::string& what) { return ConfigError(what, 0); }

}  // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::shear_analytic: return "shear_analytic";
        case Scenario::shear_numeric: return "shear_numeric";
        case Scenario::perturbed_shear: return "perturbed_shear";
        case Scenario::snapshot_replay: return "snapshot_replay";
    }
    return "unknown";
}

Scenario scenario_from_string(const std::string& name) {
    for (auto s : {Scenario::shear_analytic, Scenario::shear_numeric, Scenario::perturbed_shear,
                   Scenario::snapshot_replay}) {
        if (to_string(s) == name) return s;
    }
    throw std::invalid_argument(fmt::format(
        "unknown scenario '{}' (shear_analytic|shear_numeric|perturbed_shear|snapshot_replay)", name));
}

std::string to_string(GridPolicy p) { return p == GridPolicy::fixed ? "fixed" : "nu_refined"; }

GridPolicy grid_policy_from_string(const std::string& name) {
    if (name == "fixed") return GridPolicy::fixed;
    if (name == "nu_refined") return GridPolicy::nu_refined;
    throw std::invalid_argument(fmt::format("unknown grid policy '{}' (fixed|nu_refined)", name));
}

std::vector<std::string> valid_keys() {
    std::vector<std::string> out;
    for (const Key& k : schema()) out.push_back(k.name);
    return out;
}

void SweepConfig::validate() const {
    for (std::size_t k = 0; k < nu_list.size(); ++k) {
        if (!(nu_list[k] > 0.0)) throw invalid(fmt::format("sweep.nu entries must be positive, got {}", nu_list[k]));
        if (k > 0 && !(nu_list[k] < nu_list[k - 1])) {
            throw invalid(fmt::format("sweep.nu must be strictly decreasing ({} follows {})", nu_list[k], nu_list[k - 1]));
        }
    }
    if (!(t_min > 0.0) || !(T > t_min)) throw invalid(fmt::format("need 0 < time.t_min < time.T, got {} and {}", t_min, T));
    if (samples < 3) throw invalid(fmt::format("time.samples must be >= 3, got {}", samples));
    if (mode < 1) throw invalid("flow.mode must be >= 1");
    if (!(L1 > 0.0) || !(L2 > 0.0)) throw invalid("domain lengths must be positive");
    if (nx < 8 || ny < 8) throw invalid("grid.nx and grid.ny must be >= 8");
    if (!(stretch >= 1.0)) throw invalid("grid.stretch must be >= 1");
    if (!(cells_per_layer > 0.0) || !(kato_cells > 0.0)) throw invalid("grid cell targets must be positive");
    if (!(a > 0.0 && a < 1.0)) throw invalid("corrector.a must lie in (0, 1)");
    if (!(C > 0.0)) throw invalid("criteria.C must be positive");
    if (!(temam_wang_b > 0.0 && temam_wang_b < 1.0)) throw invalid("criteria.temam_wang_b must lie in (0, 1)");
    if (!(ckv_a > 0.0 && ckv_a < 1.0)) throw invalid("criteria.ckv_a must lie in (0, 1)");
    if (!(wang_a > 0.0 && wang_a < 1.0)) throw invalid("criteria.wang_a must lie in (0, 1)");
    if (!(wang_c > 0.0)) throw invalid("criteria.wang_c must be positive");
    if (!(t6_rho >= 0.0)) throw invalid("criteria.t6_rho must be >= 0");
    for (double r : rho_list) {
        if (!(r > 0.0)) throw invalid(fmt::format("criteria.rho entries must be positive, got {}", r));
    }
    if (scenario == Scenario::snapshot_replay) {
        if (replay_dir.empty()) throw invalid("snapshot_replay needs replay.dir");
        if (replay_flow == Scenario::snapshot_replay) throw invalid("replay.flow must name a flow scenario");
    }
    try {
        (void)CorrectorScale::power(a);
    } catch (const std::exception& e) {
        throw invalid(e.what());
    }
}

double SweepConfig::nu0() const { return nu_list.empty() ? 0.0 : *std::max_element(nu_list.begin(), nu_list.end()); }

std::vector<double> SweepConfig::sample_times() const {
    std::vector<double> t(samples);
    const double r = std::log(T / t_min);
    for (int k = 0; k < samples; ++k) t[k] = t_min * std::exp(r * k / (samples - 1));
    t.front() = t_min;
    t.back() = T;
    return t;
}

double SweepConfig::height() const {
    const Scenario flow = scenario == Scenario::snapshot_replay ? replay_flow : scenario;
    return flow == Scenario::perturbed_shear ? EulerFlow::perturbed_shear_height(mode) : L2;
}

Grid SweepConfig::grid_for(double nu) const {
    const double H = height();
    if (grid_policy == GridPolicy::fixed) {
        const double r = stretch == 1.0 ? 1.0 : std::pow(stretch, 1.0 / (ny - 2));
        return Grid(nx, ny, L1, H, top, r);
    }
    double h0 = std::sqrt(nu * t_min) / cells_per_layer;
    if (scenario == Scenario::shear_analytic) h0 = std::min(h0, C * nu / kato_cells);
    return Grid::with_first_cell(nx, ny, L1, H, top, h0);
}

CorrectorScale SweepConfig::corrector_scale() const {
    return scale == ScaleKind::prandtl ? CorrectorScale::prandtl() : CorrectorScale::power(a);
}

std::vector<std::pair<std::string, std::string>> SweepConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const Key& k : schema()) out.emplace_back(k.name, k.get(*this));
    return out;
}

std::string SweepConfig::emit() const {
    std::string s;
    for (const auto& [k, v] : echo()) s += fmt::format("{} = {}\n", k, v);
    return s;
}

SweepConfig parse_config(const std::string& text) {
    SweepConfig c;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    std::vector<std::string> seen;
    while (std::getline(in, raw)) {
        ++line;
        // strip a comment unless the '#' sits inside quotes
        bool quoted = false;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == '"') quoted = !quoted;
            if (raw[i] == '#' && !quoted) {
                raw.resize(i);
                break;
            }
        }
        const std::string body = trim(raw);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value', got '{}'", line, body), line);
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        const auto& keys = schema();
        const auto it = std::find_if(keys.begin(), keys.end(), [&](const Key& k) { return k.name == key; });
        if (it == keys.end()) {
            throw ConfigError(fmt::format("line {}: unknown key '{}'; valid keys: {}", line, key,
                                          fmt::join(valid_keys(), ", ")),
                              line);
        }
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            throw ConfigError(fmt::format("line {}: key '{}' given twice", line, key), line);
        }
        seen.push_back(key);
        const Value v = parse_value(key, it->type, value, line);
        try {
            it->set(c, v);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(fmt::format("line {}: {}", line, e.what()), line);
        }
    }
    c.validate();
    return c;
}

SweepConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(fmt::format("cannot open config '{}'", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()), e.line());
    }
}

}  // namespace vvlab
