#pragma once

#include <charconv>
#include <cmath>
#include <ios>
#include <string>

#include "mvf/core/wide.hpp"

namespace mvf::io {

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Extended-precision value as a 40-significant-digit scientific string.
inline std::string format_wide(const Wide& v) { return v.str(40, std::ios_base::scientific); }

}  // namespace mvf::io
