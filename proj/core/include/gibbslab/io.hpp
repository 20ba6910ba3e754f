#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gibbslab/gibbs.hpp"
#include "gibbslab/interaction.hpp"

namespace gibbslab {

/// 17 significant digits, enough to round-trip any double.
std::string formatDouble(double v);

/// JSON document with dimension, shape cap, kernel and local functions
/// (shape point lists and tables in ConfigCode order). Round-trips bit for
/// bit.
std::string interactionToJson(const Interaction& phi);
/// Throws std::invalid_argument naming the offending field.
Interaction interactionFromJson(const std::string& text);
Interaction loadInteraction(const std::string& path);
void saveInteraction(const Interaction& phi, const std::string& path);

using Cell = std::variant<std::string, double, std::int64_t, bool>;

/// Flat report: metadata key/value pairs and a table of rows. CSV puts the
/// metadata in leading "# key=value" lines; JSON emits
/// {"report": kind, "meta": {...}, "rows": [{...}, ...]}.
struct ReportTable {
    std::string kind;
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    ReportTable& addMeta(std::string key, Cell value) {
        meta.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    void addRow(std::vector<Cell> row);
};

std::string cellText(const Cell& c);
void writeCsv(std::ostream& os, const ReportTable& t);
void writeJson(std::ostream& os, const ReportTable& t);

/// Gibbs-state dump: one row per configuration (bitstring, logWeight,
/// probability) with volume, boundary, truncation radius, tail bound and
/// log Z as metadata.
ReportTable gibbsTable(const FiniteGibbsState& mu);

}  // namespace gibbslab
