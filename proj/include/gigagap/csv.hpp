#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gigagap::csv {

struct Row {
    int line = 0; ///< 1-based line number in the file; the header is line 1
    std::vector<std::string> fields;
};

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;
    /// Lines that could not be split (an unterminated quote), by line number.
    std::vector<int> malformed;

    /// Index of a header column, or nullopt.
    std::optional<std::size_t> column(std::string_view name) const;
};

/// Splits RFC 4180 text: comma separated, double quotes escape commas, quotes
/// and line breaks. Blank lines are skipped; a UTF-8 byte-order mark is dropped.
Table parse(std::string_view text);

/// Reads and parses a file; throws IoError if it cannot be read.
Table read(const std::filesystem::path& path);

/// Parses a whole field as a finite double ('.' decimal separator only).
std::optional<double> to_double(std::string_view field);
std::optional<int> to_int(std::string_view field);

/// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

} // namespace gigagap::csv
