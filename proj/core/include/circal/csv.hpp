#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace circal {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // data records, header excluded

    // Column index for a header name; -1 when absent.
    long column(std::string_view name) const;
};

// RFC-4180-style parser: quoted fields with "" escapes, CRLF or LF record
// ends, quoted fields may contain commas and newlines. Rejects invalid
// UTF-8, ragged rows, duplicate header names, and unterminated quotes with
// data-record numbers in the message (the header is record 0).
CsvTable parse_csv(std::string_view text);

// Reads and parses a file. DataError carries the path on I/O failure.
CsvTable read_csv(const std::string& path);

// Quotes a field if it contains a comma, quote, or line break.
std::string csv_escape(std::string_view field);

} // namespace circal
