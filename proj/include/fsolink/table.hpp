// Deterministic table model and renderers. Output is byte-stable across runs
// and platforms: to_chars for all numbers, half-away-from-zero rounding,
// "." decimal separator regardless of locale, LF line endings.
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fsolink/errors.hpp"

namespace fsolink {

enum class TableFormat { kCsv, kMarkdown };

// kTrimmed echoes axis values with trailing zeros dropped; the fixed styles
// pin the decimal count; kWattsEngineering renders a two-decimal mantissa
// with an exponent that is a multiple of three (suppressed when zero).
enum class ColumnStyle {
    kTrimmed,
    kFixed0,
    kFixed1,
    kFixed2,
    kFixed3,
    kWattsEngineering,
    kText,
};

struct Column {
    std::string name;
    ColumnStyle style = ColumnStyle::kTrimmed;
};

struct Cell {
    Cell(double number) : value(number) {}
    Cell(std::string text) : value(std::move(text)) {}
    Cell(const char* text) : value(std::string(text)) {}

    std::variant<double, std::string> value;
};

struct Table {
    std::vector<std::string> comments;  // provenance lines emitted before the header
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
};

namespace detail {

// Round to `decimals` places, halfway cases away from zero.
inline double round_away(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    const double scaled = std::round(x * scale);
    return scaled == 0.0 ? 0.0 : scaled / scale;  // avoid "-0.00"
}

inline std::string format_fixed(double x, int decimals) {
    if (!std::isfinite(x)) {
        throw internal_error("cannot render non-finite value");
    }
    const double rounded = round_away(x, decimals);
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), rounded, std::chars_format::fixed,
                      decimals);
    return std::string(buffer, result.ptr);
}

inline std::string format_trimmed(double x) {
    if (!std::isfinite(x)) {
        throw internal_error("cannot render non-finite value");
    }
    if (x == std::floor(x) && std::abs(x) < 1e15) {
        char buffer[32];
        const auto result =
            std::to_chars(buffer, buffer + sizeof(buffer), static_cast<long long>(x));
        return std::string(buffer, result.ptr);
    }
    char buffer[64];
    const auto result =
        std::to_chars(buffer, buffer + sizeof(buffer), x, std::chars_format::fixed);
    return std::string(buffer, result.ptr);
}

inline std::string format_watts_engineering(double x) {
    if (!std::isfinite(x)) {
        throw internal_error("cannot render non-finite value");
    }
    if (x == 0.0) {
        return "0.00";
    }
    const double magnitude = std::abs(x);
    int exponent = 3 * static_cast<int>(std::floor(std::floor(std::log10(magnitude)) / 3.0));
    double mantissa = x / std::pow(10.0, exponent);
    if (std::abs(round_away(mantissa, 2)) >= 1000.0) {
        exponent += 3;
        mantissa = x / std::pow(10.0, exponent);
    }
    std::string out = format_fixed(mantissa, 2);
    if (exponent != 0) {
        char suffix[16];
        std::snprintf(suffix, sizeof(suffix), "e%+03d", exponent);
        out += suffix;
    }
    return out;
}

}  // namespace detail

inline std::string format_number(double x, ColumnStyle style) {
    switch (style) {
        case ColumnStyle::kTrimmed:
        case ColumnStyle::kText:
            return detail::format_trimmed(x);
        case ColumnStyle::kFixed0:
            return detail::format_fixed(x, 0);
        case ColumnStyle::kFixed1:
            return detail::format_fixed(x, 1);
        case ColumnStyle::kFixed2:
            return detail::format_fixed(x, 2);
        case ColumnStyle::kFixed3:
            return detail::format_fixed(x, 3);
        case ColumnStyle::kWattsEngineering:
            return detail::format_watts_engineering(x);
    }
    throw internal_error("unknown column style");
}

namespace detail {

inline std::string format_cell(const Cell& cell, ColumnStyle style) {
    if (const double* number = std::get_if<double>(&cell.value)) {
        return format_number(*number, style);
    }
    return std::get<std::string>(cell.value);
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void check_row_widths(const Table& table) {
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw internal_error("table row has " + std::to_string(row.size()) +
                                 " cells, expected " + std::to_string(table.columns.size()));
        }
    }
}

}  // namespace detail

inline std::string render_table(const Table& table, TableFormat format) {
    detail::check_row_widths(table);
    std::string out;
    if (format == TableFormat::kCsv) {
        for (const auto& comment : table.comments) {
            out += "# " + comment + "\n";
        }
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            if (i > 0) out += ',';
            out += detail::csv_escape(table.columns[i].name);
        }
        out += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i > 0) out += ',';
                out += detail::csv_escape(detail::format_cell(row[i], table.columns[i].style));
            }
            out += '\n';
        }
        return out;
    }
    for (const auto& comment : table.comments) {
        out += "<!-- " + comment + " -->\n";
    }
    out += '|';
    for (const auto& column : table.columns) {
        out += ' ' + column.name + " |";
    }
    out += "\n|";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += " --- |";
    }
    out += '\n';
    for (const auto& row : table.rows) {
        out += '|';
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += ' ' + detail::format_cell(row[i], table.columns[i].style) + " |";
        }
        out += '\n';
    }
    return out;
}

}  // namespace fsolink
