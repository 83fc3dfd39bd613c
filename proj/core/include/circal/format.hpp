#pragma once

#include <charconv>
#include <string>

namespace circal {

// Shortest decimal form that parses back to exactly the same double.
inline std::string to_full_precision(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string to_fixed(double v, int decimals) {
    char buf[352];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    return std::string(buf, res.ptr);
}

} // namespace circal
