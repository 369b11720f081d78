#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reprint::csv {

/// One parsed record plus the 1-based line on which it started.
struct Record {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// RFC 4180 reader: comma separated, double-quote quoting with "" escapes,
/// quoted fields may span lines. CRLF and LF are both accepted.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Next record, or nullopt at end of input. Throws DataError on an unterminated quote.
    std::optional<Record> next();

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

/// Quotes the field when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

/// Writes fields joined by commas and terminated by '\n'.
void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace reprint::csv
