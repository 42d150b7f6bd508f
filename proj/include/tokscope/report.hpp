#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "tokscope/error.hpp"

namespace tokscope::report {

/// One table cell. Ratio cells keep the integer numerator/denominator they
/// came from, so display rounding never loses information.
struct Cell {
    enum class Kind { Empty, Text, Count, Number, Ratio, Error };

    Kind kind = Kind::Empty;
    std::string text;
    double value = 0.0;
    std::int64_t num = 0;
    std::int64_t den = 0;

    static Cell empty() { return {}; }
    static Cell of_text(std::string s) { return {Kind::Text, std::move(s), 0.0, 0, 0}; }
    static Cell of_count(std::int64_t n) { return {Kind::Count, {}, static_cast<double>(n), n, 0}; }
    static Cell of_number(double v) { return {Kind::Number, {}, v, 0, 0}; }
    static Cell of_ratio(std::int64_t num, std::int64_t den) {
        return {Kind::Ratio, {}, static_cast<double>(num) / static_cast<double>(den), num, den};
    }
    static Cell of_error(std::string message) { return {Kind::Error, std::move(message), 0.0, 0, 0}; }
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells) {
        if (cells.size() != columns.size()) throw Error("report: row width does not match header");
        rows.push_back(std::move(cells));
    }
};

enum class Format { Markdown, Csv, Json };

inline Format parse_format(const std::string& s) {
    if (s == "md" || s == "markdown") return Format::Markdown;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw Error("unknown format \"" + s + "\" (expected md, csv or json)");
}

namespace detail {

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

inline std::string full_precision(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// display text: markdown rounds to two decimals, machine formats keep all digits
inline std::string render_cell(const Cell& cell, bool two_decimals) {
    switch (cell.kind) {
        case Cell::Kind::Empty: return "";
        case Cell::Kind::Text: return cell.text;
        case Cell::Kind::Count: return std::to_string(cell.num);
        case Cell::Kind::Number:
        case Cell::Kind::Ratio: return two_decimals ? fixed2(cell.value) : full_precision(cell.value);
        case Cell::Kind::Error: return "error: " + cell.text;
    }
    return "";
}

}  // namespace detail

inline std::string to_markdown(const Table& table) {
    std::string out = "|";
    for (const auto& col : table.columns) out += " " + col + " |";
    out += "\n|";
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += "---|";
    out += "\n";
    for (const auto& row : table.rows) {
        out += "|";
        for (const auto& cell : row) out += " " + detail::render_cell(cell, true) + " |";
        out += "\n";
    }
    return out;
}

inline std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ",";
        out += detail::csv_quote(table.columns[i]);
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += detail::csv_quote(detail::render_cell(row[i], false));
        }
        out += "\n";
    }
    return out;
}

/// Rows become objects keyed by column name; ratio cells carry their integer
/// provenance alongside the value.
inline nlohmann::ordered_json to_json(const Table& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& cell = row[i];
            switch (cell.kind) {
                case Cell::Kind::Empty: obj[table.columns[i]] = nullptr; break;
                case Cell::Kind::Text: obj[table.columns[i]] = cell.text; break;
                case Cell::Kind::Count: obj[table.columns[i]] = cell.num; break;
                case Cell::Kind::Number: obj[table.columns[i]] = cell.value; break;
                case Cell::Kind::Ratio:
                    obj[table.columns[i]] = {{"value", cell.value}, {"numerator", cell.num},
                                             {"denominator", cell.den}};
                    break;
                case Cell::Kind::Error: obj[table.columns[i]] = {{"error", cell.text}}; break;
            }
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

inline std::string render(const Table& table, Format format) {
    switch (format) {
        case Format::Markdown: return to_markdown(table);
        case Format::Csv: return to_csv(table);
        case Format::Json: return to_json(table).dump(2) + "\n";
    }
    return "";
}

}  // namespace tokscope::report
