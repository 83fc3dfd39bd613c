#include "circal/csv.hpp"

#include "circal/errors.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace circal {

long CsvTable::column(std::string_view name) const {
    for (size_t j = 0; j < header.size(); ++j)
        if (header[j] == name) return static_cast<long>(j);
    return -1;
}

namespace {

// Full UTF-8 validation including overlong encodings and surrogates.
bool valid_utf8(std::string_view s, size_t& bad_offset) {
    size_t i = 0;
    const size_t n = s.size();
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            ++i;
            continue;
        }
        int extra;
        unsigned cp, min_cp;
        if ((c & 0xE0) == 0xC0) {
            extra = 1;
            cp = c & 0x1Fu;
            min_cp = 0x80;
        } else if ((c & 0xF0) == 0xE0) {
            extra = 2;
            cp = c & 0x0Fu;
            min_cp = 0x800;
        } else if ((c & 0xF8) == 0xF0) {
            extra = 3;
            cp = c & 0x07u;
            min_cp = 0x10000;
        } else {
            bad_offset = i;
            return false;
        }
        if (i + static_cast<size_t>(extra) >= n) {
            bad_offset = i;
            return false;
        }
        for (int k = 1; k <= extra; ++k) {
            const unsigned char b = static_cast<unsigned char>(s[i + static_cast<size_t>(k)]);
            if ((b & 0xC0) != 0x80) {
                bad_offset = i;
                return false;
            }
            cp = (cp << 6) | (b & 0x3Fu);
        }
        if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            bad_offset = i;
            return false;
        }
        i += 1 + static_cast<size_t>(extra);
    }
    return true;
}

[[noreturn]] void parse_fail(size_t record, const std::string& what) {
    std::ostringstream os;
    if (record == 0)
        os << "csv: header: " << what;
    else
        os << "csv: data row " << record << ": " << what;
    throw DataError(os.str());
}

} // namespace

CsvTable parse_csv(std::string_view text) {
    // Strip a UTF-8 byte order mark if present.
    if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
        static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF)
        text.remove_prefix(3);

    size_t bad = 0;
    if (!valid_utf8(text, bad)) {
        std::ostringstream os;
        os << "csv: invalid UTF-8 at byte offset " << bad;
        throw DataError(os.str());
    }

    CsvTable table;
    size_t pos = 0;
    const size_t n = text.size();
    size_t record = 0; // header is 0, first data row is 1

    while (pos < n) {
        std::vector<std::string> fields;
        std::string field;
        bool done = false;
        while (!done) {
            // one field
            if (pos < n && text[pos] == '"') {
                ++pos;
                bool closed = false;
                while (pos < n) {
                    const char c = text[pos];
                    if (c == '"') {
                        if (pos + 1 < n && text[pos + 1] == '"') {
                            field.push_back('"');
                            pos += 2;
                        } else {
                            ++pos;
                            closed = true;
                            break;
                        }
                    } else {
                        field.push_back(c);
                        ++pos;
                    }
                }
                if (!closed) parse_fail(record, "unterminated quoted field");
                if (pos < n && text[pos] != ',' && text[pos] != '\n' && text[pos] != '\r')
                    parse_fail(record, "unexpected character after closing quote");
            } else {
                while (pos < n) {
                    const char c = text[pos];
                    if (c == ',' || c == '\n' || c == '\r') break;
                    if (c == '"') parse_fail(record, "quote inside unquoted field");
                    field.push_back(c);
                    ++pos;
                }
            }
            // field terminator
            if (pos >= n) {
                fields.push_back(std::move(field));
                done = true;
            } else if (text[pos] == ',') {
                fields.push_back(std::move(field));
                field.clear();
                ++pos;
            } else if (text[pos] == '\r') {
                if (pos + 1 >= n || text[pos + 1] != '\n')
                    parse_fail(record, "stray carriage return");
                fields.push_back(std::move(field));
                pos += 2;
                done = true;
            } else { // '\n'
                fields.push_back(std::move(field));
                ++pos;
                done = true;
            }
        }

        if (record == 0) {
            table.header = std::move(fields);
            std::unordered_set<std::string_view> seen;
            for (const auto& name : table.header)
                if (!seen.insert(name).second)
                    parse_fail(0, "duplicate column name '" + name + "'");
        } else {
            if (fields.size() != table.header.size()) {
                std::ostringstream os;
                os << "expected " << table.header.size() << " fields, found " << fields.size();
                parse_fail(record, os.str());
            }
            table.rows.push_back(std::move(fields));
        }
        ++record;
    }

    if (record == 0) throw DataError("csv: empty input, no header record");
    return table;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("csv: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw DataError("csv: read failure on '" + path + "'");
    return parse_csv(buf.str());
}

std::string csv_escape(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (const char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace circal
