#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "swipt/swipt.hpp"

namespace swipt::cli {

/// A cell is either a number or free text; empty text means "not applicable".
struct Cell {
    std::string text;
    double number = std::nan("");
    bool numeric = false;

    Cell() = default;
    Cell(double v) : number(v), numeric(true) {}  // NOLINT(google-explicit-constructor)
    Cell(std::string s) : text(std::move(s)) {}    // NOLINT(google-explicit-constructor)
    Cell(const char* s) : text(s) {}               // NOLINT(google-explicit-constructor)
};

inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.10g}", v);
}

inline std::string render(const Cell& c) { return c.numeric ? format_number(c.number) : c.text; }

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Commented header block shared by every output file.
struct RunHeader {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> extra;
};

inline void write_csv(std::ostream& out, const RunHeader& h, const Table& t) {
    out << "# swipt " << kVersion << '\n';
    out << "# command: " << h.command << '\n';
    out << "# config_hash: " << h.config_hash << '\n';
    out << "# seed: " << h.seed << '\n';
    for (const auto& [k, v] : h.extra) out << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(render(row[i]));
        out << '\n';
    }
}

inline nlohmann::ordered_json to_json(const RunHeader& h, const Table& t) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["command"] = h.command;
    j["config_hash"] = h.config_hash;
    j["seed"] = h.seed;
    for (const auto& [k, v] : h.extra) j[k] = v;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
            const auto& c = row[i];
            if (c.numeric && std::isfinite(c.number)) {
                r[t.columns[i]] = c.number;
            } else if (c.numeric || c.text.empty()) {
                r[t.columns[i]] = nullptr;
            } else {
                r[t.columns[i]] = c.text;
            }
        }
        rows.push_back(std::move(r));
    }
    return j;
}

/// Writes the table as CSV (and/or a JSON sidecar) to `path`, or CSV to stdout
/// when `path` is empty.
inline void emit(const std::string& path, const std::string& format, const RunHeader& h, const Table& t) {
    const bool csv = format != "json";
    const bool json = format == "json" || format == "both";
    if (path.empty()) {
        if (csv) write_csv(std::cout, h, t);
        if (json) std::cout << to_json(h, t).dump(2) << '\n';
        return;
    }
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    if (csv) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path);
        write_csv(f, h, t);
    }
    if (json) {
        auto jp = p;
        jp.replace_extension(".json");
        std::ofstream f(jp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + jp.string());
        f << to_json(h, t).dump(2) << '\n';
    }
}

}  // namespace swipt::cli
