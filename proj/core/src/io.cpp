#include "gibbslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gibbslab {

using nlohmann::json;

std::string formatDouble(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ------------------------------------------------------------ interaction

namespace {

json pointJson(const Point& p) {
    json a = json::array();
    for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
    return a;
}

template <class T>
T field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw std::invalid_argument("interaction file: missing field '" + std::string(key) + "' in " + where);
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("interaction file: field '" + std::string(key) + "' in " + where +
                                    " has the wrong type");
    }
}

}  // namespace

std::string interactionToJson(const Interaction& phi) {
    json doc;
    doc["format"] = "gibbslab-interaction";
    doc["version"] = 1;
    doc["dimension"] = phi.dim();
    doc["shapeCap"] = phi.shapeCap();
    doc["discardedKernelTail"] = phi.discardedKernelTail();
    if (phi.kernel()) {
        const TwoBodyKernel& k = *phi.kernel();
        doc["kernel"] = {{"form", "power-law"},
                         {"norm", toString(k.norm)},
                         {"amplitude", k.amplitude},
                         {"exponent", k.exponent},
                         {"truncationRadius", k.truncationRadius}};
    } else {
        doc["kernel"] = nullptr;
    }
    json locals = json::array();
    for (const auto& f : phi.localFunctions()) {
        json shape = json::array();
        for (const Point& p : f.shape) shape.push_back(pointJson(p));
        locals.push_back({{"shape", shape}, {"table", f.table}});
    }
    doc["localFunctions"] = locals;
    return doc.dump(2) + "\n";
}

Interaction interactionFromJson(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("interaction file: ") + e.what());
    }
    if (field<std::string>(doc, "format", "document") != "gibbslab-interaction") {
        throw std::invalid_argument("interaction file: field 'format' must be \"gibbslab-interaction\"");
    }
    if (field<int>(doc, "version", "document") != 1) throw std::invalid_argument("interaction file: unsupported version");
    const int dim = field<int>(doc, "dimension", "document");
    const auto cap = doc.contains("shapeCap") ? field<std::size_t>(doc, "shapeCap", "document") : kDefaultShapeCap;
    Interaction phi(dim, cap);
    if (doc.contains("kernel") && !doc["kernel"].is_null()) {
        const json& k = doc["kernel"];
        if (field<std::string>(k, "form", "kernel") != "power-law") {
            throw std::invalid_argument("interaction file: kernel form must be \"power-law\"");
        }
        TwoBodyKernel kern;
        kern.norm = kernelNormFromString(field<std::string>(k, "norm", "kernel"));
        kern.amplitude = field<double>(k, "amplitude", "kernel");
        kern.exponent = field<double>(k, "exponent", "kernel");
        kern.truncationRadius = field<int>(k, "truncationRadius", "kernel");
        validateKernel(kern, dim);
        phi.setKernel(kern);
    }
    if (doc.contains("localFunctions")) {
        const json& locals = doc["localFunctions"];
        if (!locals.is_array()) throw std::invalid_argument("interaction file: 'localFunctions' must be an array");
        for (std::size_t i = 0; i < locals.size(); ++i) {
            const std::string where = "localFunctions[" + std::to_string(i) + "]";
            const auto shapeRaw = field<std::vector<std::vector<int>>>(locals[i], "shape", where);
            std::vector<Point> pts;
            for (const auto& c : shapeRaw) {
                if (static_cast<int>(c.size()) != dim) {
                    throw std::invalid_argument("interaction file: point of wrong dimension in " + where);
                }
                pts.push_back(Point::fromSpan(c));
            }
            const SiteSet shape(pts);
            if (shape.size() != pts.size()) throw std::invalid_argument("interaction file: repeated point in " + where);
            phi.addLocal(shape, field<std::vector<double>>(locals[i], "table", where));
        }
    }
    if (doc.contains("discardedKernelTail")) phi.recordDiscardedTail(field<double>(doc, "discardedKernelTail", "document"));
    return phi;
}

Interaction loadInteraction(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open interaction file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return interactionFromJson(ss.str());
}

void saveInteraction(const Interaction& phi, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write interaction file '" + path + "'");
    out << interactionToJson(phi);
}

// ----------------------------------------------------------------- reports

void ReportTable::addRow(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("report row width does not match the columns");
    rows.push_back(std::move(row));
}

std::string cellText(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, double>) {
                return formatDouble(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return std::to_string(v);
            }
        },
        c);
}

namespace {

std::string csvField(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string jsonCell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? formatDouble(*d) : "null";
    if (const auto* s = std::get_if<std::string>(&c)) return json(*s).dump();
    return cellText(c);
}

}  // namespace

void writeCsv(std::ostream& os, const ReportTable& t) {
    os << "# report=" << t.kind << "\n";
    for (const auto& [k, v] : t.meta) os << "# " << k << "=" << cellText(v) << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csvField(t.columns[i]);
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csvField(cellText(row[i]));
        os << "\n";
    }
}

void writeJson(std::ostream& os, const ReportTable& t) {
    os << "{\n  \"report\": " << json(t.kind).dump() << ",\n  \"meta\": {";
    for (std::size_t i = 0; i < t.meta.size(); ++i) {
        os << (i ? "," : "") << "\n    " << json(t.meta[i].first).dump() << ": " << jsonCell(t.meta[i].second);
    }
    os << (t.meta.empty() ? "" : "\n  ") << "},\n  \"rows\": [";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? "," : "") << "\n    {";
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << (i ? ", " : "") << json(t.columns[i]).dump() << ": " << jsonCell(t.rows[r][i]);
        }
        os << "}";
    }
    os << (t.rows.empty() ? "" : "\n  ") << "]\n}\n";
}

ReportTable gibbsTable(const FiniteGibbsState& mu) {
    ReportTable t;
    t.kind = "gibbs-state";
    t.addMeta("volume", mu.volume.str())
        .addMeta("boundary", mu.boundary.describe())
        .addMeta("truncationRadius", std::int64_t{mu.truncationRadius})
        .addMeta("tailBound", mu.tailBound)
        .addMeta("logZ", mu.logZ);
    t.columns = {"configuration", "logWeight", "probability"};
    for (ConfigCode c = 0; c < mu.logWeights.size(); ++c) {
        t.addRow({codeToBitstring(c, mu.volume.size()), mu.logWeights[c], mu.probability(c)});
    }
    return t;
}

}  // namespace gibbslab
