#pragma once

// Row tables emitted by the CLI: CSV (RFC 4180 quoting, 17 significant
// digits) or JSON {command, params, rows, version}.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace darboux::cli {

inline constexpr const char* version = "1.0.0";

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
    std::string command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string cell_text(const Cell& c) {
    struct V {
        std::string operator()(double x) const { return format_number(x); }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{}, c);
}

inline void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << "\r\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
        os << "\r\n";
    }
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;  // JSON has no NaN/inf
        return *d;
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
    if (const auto* b = std::get_if<bool>(&c)) return *b;
    return std::get<std::string>(c);
}

inline void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json doc;
    doc["command"] = t.command;
    doc["params"] = t.params;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    doc["version"] = version;
    // nlohmann prints the shortest round-trip form, so no digits are lost
    os << doc.dump(2) << "\n";
}

}  // namespace darboux::cli
