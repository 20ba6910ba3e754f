#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gibbslab::cli {

namespace {

const std::vector<std::string> kInteractionKeys{
    "file",           "model",          "beta",
    "field",          "scale",          "materialize",
    "kernel.amplitude", "kernel.exponent", "kernel.radius",
    "kernel.norm",    "kernel.decay_norm", "random.seed",
    "random.shapes",  "random.max_sites", "random.max_diameter",
    "random.amplitude", "random.flip_symmetric", "random.l1_connected",
    "random.norm_abs",
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool validName(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
    });
}

std::string where(const std::string& origin, int line, int column) {
    return origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": ";
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parseLong(std::string_view s, long& out) {
    const std::string t(trim(s));
    if (t.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtol(t.c_str(), &end, 10);
    return errno == 0 && end == t.c_str() + t.size();
}

}  // namespace

const std::map<std::string, std::vector<std::string>>& configSchema() {
    static const std::map<std::string, std::vector<std::string>> schema{
        {"", {"dimension", "truncation_radius", "seed", "tolerance", "threads", "allow_large_volume"}},
        {"interaction", kInteractionKeys},
        {"perturbation", kInteractionKeys},
        {"volume", {"sides", "radius", "inner"}},
        {"boundary", {"kind", "base", "deviations"}},
        {"dobrushin", {"expect"}},
        {"peierls", {"beta", "delta", "contours", "events"}},
        {"census", {"n_max"}},
        {"epsilon", {"step", "l_max"}},
        {"pressure", {"n_min", "n_max"}},
        {"variational", {"n", "p_min", "p_max", "p_step"}},
        {"chain", {"sweeps", "burn_in", "thinning", "site", "init", "initial_spins", "trajectory"}},
        {"coexistence", {"side", "seeds", "sweeps", "burn_in", "thinning", "init", "expect", "gap_min"}},
    };
    return schema;
}

Point parsePoint(std::string_view text, int dim) {
    const auto parts = split(text, ',');
    if (static_cast<int>(parts.size()) != dim) {
        throw std::invalid_argument("point '" + std::string(text) + "' needs " + std::to_string(dim) +
                                    " coordinates");
    }
    Point p(dim);
    for (int i = 0; i < dim; ++i) {
        long v = 0;
        if (!parseLong(parts[static_cast<std::size_t>(i)], v)) {
            throw std::invalid_argument("point '" + std::string(text) + "' has a non-integer coordinate");
        }
        p[i] = static_cast<int>(v);
    }
    return p;
}

Config Config::parse(std::string_view text, std::string origin) {
    Config cfg;
    cfg.origin_ = std::move(origin);
    const auto& schema = configSchema();
    std::string section;
    cfg.sections_[section];
    int lineNo = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineNo;

        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const std::string_view body = trim(line);
        if (body.empty()) continue;
        const int col = static_cast<int>(line.find(body.front())) + 1;

        if (body.front() == '[') {
            if (body.back() != ']') throw ConfigError(where(cfg.origin_, lineNo, col) + "unterminated section header");
            const std::string name(trim(body.substr(1, body.size() - 2)));
            if (!schema.count(name) || name.empty()) {
                throw ConfigError(where(cfg.origin_, lineNo, col) + "unknown section [" + name + "]");
            }
            if (cfg.sections_.count(name)) {
                throw ConfigError(where(cfg.origin_, lineNo, col) + "duplicate section [" + name + "]");
            }
            section = name;
            cfg.sections_[section];
            continue;
        }

        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(where(cfg.origin_, lineNo, col) + "expected key = value");
        }
        const std::string key(trim(body.substr(0, eq)));
        const std::string value(trim(body.substr(eq + 1)));
        if (!validName(key)) throw ConfigError(where(cfg.origin_, lineNo, col) + "malformed key '" + key + "'");
        const auto& allowed = schema.at(section);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(where(cfg.origin_, lineNo, col) + "unknown key '" + key + "'" +
                              (section.empty() ? std::string(" at top level") : " in section [" + section + "]"));
        }
        if (value.empty()) throw ConfigError(where(cfg.origin_, lineNo, col) + "key '" + key + "' has no value");
        auto& entries = cfg.sections_[section];
        if (entries.count(key)) throw ConfigError(where(cfg.origin_, lineNo, col) + "duplicate key '" + key + "'");
        const int valueCol = static_cast<int>(raw.find(value, static_cast<std::size_t>(col - 1) + eq)) + 1;
        entries[key] = Entry{value, lineNo, valueCol};
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    Config cfg = parse(ss.str(), path);
    const auto parent = std::filesystem::path(path).parent_path();
    cfg.baseDir_ = parent.empty() ? "." : parent.string();
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

ConfigError Config::error(const std::string& section, const std::string& key, const std::string& what) const {
    const Entry* e = find(section, key);
    const std::string name = section.empty() ? key : section + "." + key;
    if (!e) return ConfigError(origin_ + ": key '" + name + "': " + what);
    return ConfigError(where(origin_, e->line, e->column) + "key '" + name + "': " + what);
}

std::string Config::str(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    if (!e) throw error(section, key, "required but missing");
    return e->value;
}

std::string Config::str(const std::string& section, const std::string& key, const std::string& fallback) const {
    const Entry* e = find(section, key);
    return e ? e->value : fallback;
}

double Config::number(const std::string& section, const std::string& key) const {
    const std::string v = str(section, key);
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (errno != 0 || end != v.c_str() + v.size()) throw error(section, key, "'" + v + "' is not a number");
    return d;
}

double Config::number(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
}

long Config::integer(const std::string& section, const std::string& key) const {
    const std::string v = str(section, key);
    long out = 0;
    if (!parseLong(v, out)) throw error(section, key, "'" + v + "' is not an integer");
    return out;
}

long Config::integer(const std::string& section, const std::string& key, long fallback) const {
    return has(section, key) ? integer(section, key) : fallback;
}

bool Config::boolean(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = str(section, key);
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw error(section, key, "'" + v + "' is not a boolean (true/false)");
}

std::vector<long> Config::integers(const std::string& section, const std::string& key) const {
    std::vector<long> out;
    const std::string text = str(section, key);
    for (const auto part : split(text, ',')) {
        long v = 0;
        if (!parseLong(part, v)) throw error(section, key, "'" + std::string(part) + "' is not an integer");
        out.push_back(v);
    }
    return out;
}

std::vector<Point> Config::points(const std::string& section, const std::string& key, int dim) const {
    std::vector<Point> out;
    const std::string text = str(section, key);
    for (const auto part : split(text, ';')) {
        if (part.empty()) continue;
        try {
            out.push_back(parsePoint(part, dim));
        } catch (const std::invalid_argument& e) {
            throw error(section, key, e.what());
        }
    }
    return out;
}

void Config::set(const std::string& section, const std::string& key, std::string value) {
    auto& e = sections_[section][key];
    e.value = std::move(value);
}

}  // namespace gibbslab::cli
