// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace dirac {

//! Shortest-safe locale-independent text with 17 significant digits.
inline std::string format_number(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (res.ec != std::errc{}) return "nan";
    return std::string(buf, res.ptr);
}

}  // namespace dirac
