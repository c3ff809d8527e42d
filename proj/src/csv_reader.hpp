#pragma once

// Minimal RFC 4180 reader: comma separated, optional double-quoted fields
// with "" escapes, LF or CRLF line ends. Blank lines are skipped.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cvibench::detail {

struct CsvRecord {
    std::size_t line = 0;  // 1-based physical line of the record start
    std::vector<std::string> fields;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<CsvRecord> parse_csv_records(std::string_view text) {
    std::vector<CsvRecord> out;
    std::size_t pos = 0;
    std::size_t line = 1;
    if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;
    while (pos < text.size()) {
        CsvRecord rec;
        rec.line = line;
        std::string field;
        bool in_quotes = false;
        bool quoted = false;
        bool done = false;
        while (pos < text.size() && !done) {
            const char c = text[pos++];
            if (in_quotes) {
                if (c == '"') {
                    if (pos < text.size() && text[pos] == '"') {
                        field.push_back('"');
                        ++pos;
                    } else {
                        in_quotes = false;
                    }
                } else {
                    if (c == '\n') ++line;
                    field.push_back(c);
                }
            } else if (c == '"' && trim(field).empty()) {
                field.clear();
                in_quotes = quoted = true;
            } else if (c == ',') {
                rec.fields.push_back(quoted ? field : std::string(trim(field)));
                field.clear();
                quoted = false;
            } else if (c == '\n') {
                ++line;
                done = true;
            } else if (quoted && (c == '\r' || c == ' ' || c == '\t')) {
                // padding after a closing quote
            } else {
                field.push_back(c);
            }
        }
        rec.fields.push_back(quoted ? field : std::string(trim(field)));
        const bool blank = rec.fields.size() == 1 && rec.fields[0].empty() && !quoted;
        if (!blank) out.push_back(std::move(rec));
    }
    return out;
}

inline std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<long long> parse_integer(std::string_view s) {
    s = trim(s);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace cvibench::detail
