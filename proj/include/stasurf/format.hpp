#pragma once
// Shortest round-trip decimal formatting, so reruns are byte-identical.

#include <charconv>
#include <string>

namespace stasurf {

inline std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

} // namespace stasurf
