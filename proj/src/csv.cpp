#include "reprint/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "reprint/error.hpp"

namespace reprint::csv {

std::optional<Record> Reader::next() {
    std::string line;
    if (!std::getline(in_, line)) return std::nullopt;
    ++line_;
    Record rec;
    rec.line = line_;

    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    std::size_t i = 0;
    for (;;) {
        if (i >= line.size()) {
            if (in_quotes) {
                if (!std::getline(in_, line)) {
                    throw DataError("unterminated quoted field starting on line " + std::to_string(rec.line));
                }
                ++line_;
                field.push_back('\n');
                i = 0;
                continue;
            }
            break;
        }
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty() && !was_quoted) {
            in_quotes = true;
            was_quoted = true;
        } else if (c == ',') {
            rec.fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (c == '\r' && i + 1 == line.size()) {
            // CRLF line ending
        } else {
            field.push_back(c);
        }
        ++i;
    }
    rec.fields.push_back(std::move(field));
    return rec;
}

std::string escape(std::string_view field) {
    bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!quote) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

}  // namespace reprint::csv
