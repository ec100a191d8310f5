#include "bfp/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace bfp {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, int line) {
    std::string s = trim(raw);
    if (s.empty()) throw ConfigError("empty numeric value", line);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v))
        throw ConfigError("invalid number '" + s + "'", line);
    return v;
}

std::vector<double> parse_vector(const std::string& raw, int line) {
    std::string s = trim(raw);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ConfigError("expected bracketed list, got '" + s + "'", line);
    std::vector<double> out;
    std::string inner = s.substr(1, s.size() - 2);
    if (trim(inner).empty()) return out;
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(item, line));
    return out;
}

bool parse_bool(const std::string& raw, int line) {
    std::string s = trim(raw);
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError("expected true/false, got '" + s + "'", line);
}

std::uint64_t parse_count(const std::string& raw, int line) {
    double v = parse_number(raw, line);
    if (v < 0 || v != std::floor(v))
        throw ConfigError("expected a non-negative integer, got '" +
                          trim(raw) + "'", line);
    return static_cast<std::uint64_t>(v);
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_vector(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_number(v[i]);
    }
    return out + "]";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.map_c.clear();

    static const std::map<std::string, std::set<std::string>> known = {
        {"space", {"kind", "dim", "q", "p", "box", "s_override"}},
        {"map", {"kind", "a", "b", "c"}},
        {"phi", {"kind", "c", "q", "unchecked"}},
        {"run", {"x0", "epsilons", "tol", "max_iter", "horizon", "seed",
                 "samples", "margin"}},
    };

    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool saw_map_a = false, saw_map_b = false, saw_x0 = false,
         saw_epsilons = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string l = raw;
        auto hash = l.find('#');
        if (hash != std::string::npos) l = l.substr(0, hash);
        l = trim(l);
        if (l.empty()) continue;
        if (l.front() == '[') {
            if (l.back() != ']')
                throw ConfigError("malformed section header", line);
            section = l.substr(1, l.size() - 2);
            if (!known.count(section))
                throw ConfigError("unknown section [" + section + "]", line);
            continue;
        }
        auto eq = l.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value", line);
        std::string key = trim(l.substr(0, eq));
        std::string val = trim(l.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' outside any section", line);
        if (!known.at(section).count(key))
            throw ConfigError("unknown key '" + key + "' in [" + section + "]",
                              line);

        if (section == "space") {
            if (key == "kind") cfg.space_kind = val;
            else if (key == "dim") cfg.dim = parse_count(val, line);
            else if (key == "q") cfg.q = parse_number(val, line);
            else if (key == "p") cfg.p = parse_number(val, line);
            else if (key == "box") cfg.box = parse_number(val, line);
            else if (key == "s_override") cfg.s_override = parse_number(val, line);
        } else if (section == "map") {
            if (key == "kind") cfg.map_kind = val;
            else if (key == "a") {
                cfg.map_a = val.front() == '[' ? parse_vector(val, line)
                                               : std::vector<double>{
                                                     parse_number(val, line)};
                saw_map_a = true;
            } else if (key == "b") {
                cfg.map_b = val.front() == '[' ? parse_vector(val, line)
                                               : std::vector<double>{
                                                     parse_number(val, line)};
                saw_map_b = true;
            } else if (key == "c") cfg.map_c = parse_vector(val, line);
        } else if (section == "phi") {
            if (key == "kind") cfg.phi_kind = val;
            else if (key == "c") cfg.phi_c = parse_number(val, line);
            else if (key == "q") cfg.phi_q = parse_number(val, line);
            else if (key == "unchecked") cfg.phi_unchecked = parse_bool(val, line);
        } else {  // run
            if (key == "x0") { cfg.x0 = parse_vector(val, line); saw_x0 = true; }
            else if (key == "epsilons") {
                cfg.epsilons = parse_vector(val, line);
                saw_epsilons = true;
            }
            else if (key == "tol") cfg.tol = parse_number(val, line);
            else if (key == "max_iter") cfg.max_iter = parse_count(val, line);
            else if (key == "horizon") cfg.horizon = parse_count(val, line);
            else if (key == "seed") cfg.seed = parse_count(val, line);
            else if (key == "samples") cfg.samples = parse_count(val, line);
            else if (key == "margin") cfg.margin_scale = parse_number(val, line);
        }
    }
    (void)saw_map_a;
    (void)saw_map_b;
    (void)saw_x0;

    // semantic validation; building the components re-checks their own
    // invariants and surfaces field-level messages
    (void)saw_epsilons;
    if (cfg.epsilons.empty())
        throw ConfigError("at least one epsilon required");
    for (double e : cfg.epsilons)
        if (!(e > 0.0)) throw ConfigError("epsilons must all be > 0");
    if (!(cfg.tol > 0.0)) throw ConfigError("run.tol must be > 0");
    if (cfg.max_iter == 0) throw ConfigError("run.max_iter must be >= 1");
    if (cfg.samples == 0) throw ConfigError("run.samples must be >= 1");
    if (cfg.horizon == 0) throw ConfigError("run.horizon must be >= 1");
    if (!(cfg.margin_scale >= 0.0)) throw ConfigError("run.margin must be >= 0");

    try {
        BMetricSpace space = cfg.build_space();
        SelfMap map = cfg.build_map();
        (void)cfg.build_phi();
        if (cfg.x0.size() != space.dim())
            throw std::invalid_argument("run.x0 dimension must equal space.dim");
        if (map.dim() != space.dim())
            throw std::invalid_argument("map and space dimensions differ");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

BMetricSpace RunConfig::build_space() const {
    SamplerSpec sampler{box};
    BMetricSpace space = [&] {
        if (space_kind == "euclidean") return BMetricSpace::euclidean(dim, sampler);
        if (space_kind == "snowflake") return BMetricSpace::snowflake(q, dim, sampler);
        if (space_kind == "lp_quasi") return BMetricSpace::lp_quasi(p, dim, sampler);
        throw std::invalid_argument("space.kind must be euclidean, snowflake or lp_quasi");
    }();
    if (s_override) space.override_s(*s_override);
    return space;
}

SelfMap RunConfig::build_map() const {
    if (map_kind == "scalar_affine") {
        if (map_a.size() != 1 || map_b.size() != 1)
            throw std::invalid_argument("scalar_affine needs scalar a and b");
        return SelfMap::scalar_affine(map_a[0], map_b[0], dim);
    }
    if (map_kind == "affine") {
        return SelfMap::affine(map_a, map_b, dim);
    }
    if (map_kind == "constant") {
        return SelfMap::constant(Point{map_c});
    }
    throw std::invalid_argument(
        "map.kind must be scalar_affine, affine or constant");
}

ComparisonFunction RunConfig::build_phi() const {
    if (phi_kind == "linear")
        return ComparisonFunction::linear(phi_c, phi_unchecked);
    if (phi_kind == "rational") return ComparisonFunction::rational();
    if (phi_kind == "power_linear")
        return ComparisonFunction::power_linear(phi_c, phi_q, phi_unchecked);
    throw std::invalid_argument(
        "phi.kind must be linear, rational or power_linear");
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    out += "[space]\n";
    out += "kind = " + cfg.space_kind + "\n";
    out += "dim = " + std::to_string(cfg.dim) + "\n";
    if (cfg.space_kind == "snowflake")
        out += "q = " + format_number(cfg.q) + "\n";
    if (cfg.space_kind == "lp_quasi")
        out += "p = " + format_number(cfg.p) + "\n";
    out += "box = " + format_number(cfg.box) + "\n";
    if (cfg.s_override)
        out += "s_override = " + format_number(*cfg.s_override) + "\n";
    out += "\n[map]\n";
    out += "kind = " + cfg.map_kind + "\n";
    if (cfg.map_kind == "constant") {
        out += "c = " + format_vector(cfg.map_c) + "\n";
    } else {
        out += "a = " + format_vector(cfg.map_a) + "\n";
        out += "b = " + format_vector(cfg.map_b) + "\n";
    }
    out += "\n[phi]\n";
    out += "kind = " + cfg.phi_kind + "\n";
    if (cfg.phi_kind != "rational") {
        out += "c = " + format_number(cfg.phi_c) + "\n";
        if (cfg.phi_kind == "power_linear")
            out += "q = " + format_number(cfg.phi_q) + "\n";
        if (cfg.phi_unchecked) out += "unchecked = true\n";
    }
    out += "\n[run]\n";
    out += "x0 = " + format_vector(cfg.x0) + "\n";
    out += "epsilons = " + format_vector(cfg.epsilons) + "\n";
    out += "tol = " + format_number(cfg.tol) + "\n";
    out += "max_iter = " + std::to_string(cfg.max_iter) + "\n";
    out += "horizon = " + std::to_string(cfg.horizon) + "\n";
    out += "seed = " + std::to_string(cfg.seed) + "\n";
    out += "samples = " + std::to_string(cfg.samples) + "\n";
    out += "margin = " + format_number(cfg.margin_scale) + "\n";
    return out;
}

}  // namespace bfp
