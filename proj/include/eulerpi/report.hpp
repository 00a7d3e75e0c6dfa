#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eulerpi/formulas.hpp"

namespace eulerpi {

inline constexpr int kReportSchema = 1;

struct OutputReport {
    std::string method;
    std::size_t requested_digits = 0;
    std::size_t guaranteed_digits = 0;
    std::vector<std::uint64_t> terms_used; // per component series
    std::uint64_t error_ulps = 0;
    std::uint64_t elapsed_ms = 0;
    std::string value;
};

/// elapsed_ms is the only key that varies between identical runs.
inline nlohmann::ordered_json to_json(const OutputReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["method"] = r.method;
    j["requested_digits"] = r.requested_digits;
    j["guaranteed_digits"] = r.guaranteed_digits;
    j["terms_used"] = r.terms_used;
    j["error_ulps"] = r.error_ulps;
    j["value"] = r.value;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

// ---------------------------------------------------------------------------
// Convergence comparison rendering.

enum class CompareFormat { Table, Json, Csv };

inline std::optional<CompareFormat> parse_compare_format(std::string_view s) {
    if (s == "table") return CompareFormat::Table;
    if (s == "json") return CompareFormat::Json;
    if (s == "csv") return CompareFormat::Csv;
    return std::nullopt;
}

namespace detail {

inline std::string format_rate(const std::optional<double>& rate) {
    if (!rate) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "~%.3f", *rate);
    return buf;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// Terminal columns occupied by a UTF-8 string (one per code point).
inline std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

} // namespace detail

inline const std::vector<std::string>& comparison_columns() {
    static const std::vector<std::string> cols = {"method", "ratio", "terms_per_digit", "terms_for_target", "notes"};
    return cols;
}

inline std::string render_comparison(const std::vector<ComparisonRow>& rows, std::size_t target_digits,
                                     CompareFormat format) {
    std::ostringstream out;
    switch (format) {
    case CompareFormat::Csv: {
        const auto& cols = comparison_columns();
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
        out << '\n';
        for (const auto& r : rows) {
            out << detail::csv_field(r.method) << ',' << detail::csv_field(r.ratio) << ','
                << detail::format_rate(r.terms_per_digit) << ',' << detail::csv_field(r.terms_display()) << ','
                << detail::csv_field(r.notes) << '\n';
        }
        break;
    }
    case CompareFormat::Json: {
        nlohmann::ordered_json j;
        j["schema"] = kReportSchema;
        j["digits"] = target_digits;
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json row;
            row["method"] = r.method;
            row["ratio"] = r.ratio;
            row["terms_per_digit"] = r.terms_per_digit ? nlohmann::ordered_json(*r.terms_per_digit) : nullptr;
            if (r.terms_for_target)
                row["terms_for_target"] = *r.terms_for_target;
            else
                row["terms_for_target"] = r.terms_symbolic;
            row["notes"] = r.notes;
            j["rows"].push_back(std::move(row));
        }
        out << j.dump() << '\n';
        break;
    }
    case CompareFormat::Table: {
        std::vector<std::vector<std::string>> cells{comparison_columns()};
        for (const auto& r : rows) {
            std::string terms = r.terms_for_target ? std::to_string(*r.terms_for_target) : r.terms_symbolic + " terms";
            cells.push_back({r.method, r.ratio, detail::format_rate(r.terms_per_digit), terms, r.notes});
        }
        std::vector<std::size_t> width(cells.front().size(), 0);
        for (const auto& line : cells)
            for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], detail::display_width(line[i]));
        out << "convergence to " << target_digits << " digits\n";
        for (const auto& line : cells) {
            std::string text;
            for (std::size_t i = 0; i < line.size(); ++i) {
                text += line[i];
                if (i + 1 < line.size()) text.append(width[i] - detail::display_width(line[i]) + 2, ' ');
            }
            out << text << '\n';
        }
        break;
    }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Reference digit fixtures: ASCII digits with an optional decimal point;
// whitespace is ignored and lines starting with '#' are comments.

inline std::string parse_fixture(std::string_view text) {
    std::string digits;
    bool seen_point = false;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        auto first = line.find_first_not_of(" \t\r\f\v");
        if (first != std::string::npos && line[first] == '#') continue;
        for (char c : line) {
            if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') continue;
            if (c == '.') {
                if (seen_point) throw std::invalid_argument("fixture has more than one decimal point");
                seen_point = true;
            } else if (c < '0' || c > '9') {
                throw std::invalid_argument(std::string("fixture has unexpected character '") + c + "'");
            }
            digits += c;
        }
    }
    if (digits.empty()) throw std::invalid_argument("fixture contains no digits");
    return digits;
}

/// Position of the first character where `output` disagrees with the
/// fixture, or nullopt if `output` is a prefix of it.
inline std::optional<std::size_t> fixture_mismatch(std::string_view output, std::string_view fixture) {
    for (std::size_t i = 0; i < output.size(); ++i)
        if (i >= fixture.size() || output[i] != fixture[i]) return i;
    return std::nullopt;
}

} // namespace eulerpi
