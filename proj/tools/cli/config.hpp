#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gibbslab/lattice.hpp"

namespace gibbslab::cli {

/// Parse or validation failure; the message names the origin, line and
/// column, and the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Line-oriented key=value document with [section] headers. Keys before
/// the first header belong to the top-level section "". Every section and
/// key is checked against a fixed schema while parsing.
class Config {
public:
    struct Entry {
        std::string value;
        int line = 0;
        int column = 0;
    };

    static Config parse(std::string_view text, std::string origin = "<config>");
    static Config load(const std::string& path);

    const std::string& origin() const { return origin_; }
    /// Directory of the config file, for resolving relative paths.
    const std::string& baseDir() const { return baseDir_; }

    bool hasSection(const std::string& section) const { return sections_.count(section) != 0; }
    bool has(const std::string& section, const std::string& key) const;
    const Entry* find(const std::string& section, const std::string& key) const;

    std::string str(const std::string& section, const std::string& key) const;
    std::string str(const std::string& section, const std::string& key, const std::string& fallback) const;
    double number(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    long integer(const std::string& section, const std::string& key) const;
    long integer(const std::string& section, const std::string& key, long fallback) const;
    bool boolean(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<long> integers(const std::string& section, const std::string& key) const;
    /// "x,y;x,y;..." as points of the given dimension.
    std::vector<Point> points(const std::string& section, const std::string& key, int dim) const;

    /// Overrides (or inserts) a value, e.g. from a command-line flag.
    void set(const std::string& section, const std::string& key, std::string value);

    /// Error prefixed with the location of section/key.
    ConfigError error(const std::string& section, const std::string& key, const std::string& what) const;

private:
    std::string origin_;
    std::string baseDir_ = ".";
    std::map<std::string, std::map<std::string, Entry>> sections_;
};

/// Sections and keys the parser accepts.
const std::map<std::string, std::vector<std::string>>& configSchema();

/// "x,y" to a point of the given dimension; throws std::invalid_argument.
Point parsePoint(std::string_view text, int dim);

}  // namespace gibbslab::cli
