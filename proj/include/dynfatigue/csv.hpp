#pragma once

#include <charconv>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace dynfatigue::csv {

/// Fixed 12-significant-digit rendering; locale independent and identical
/// across runs, so output files are byte-reproducible.
inline std::string format_number(double value) {
    if (value == 0.0) {
        value = 0.0;  // no "-0"
    }
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    return std::string(buf, result.ptr);
}

inline void write_row(std::ostream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) {
            out << ',';
        }
        out << format_number(v);
        first = false;
    }
    out << '\n';
}

inline void write_header(std::ostream& out, std::string_view header) { out << header << '\n'; }

}  // namespace dynfatigue::csv
