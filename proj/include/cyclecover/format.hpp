#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace cyclecover {

/// Shortest decimal string that round-trips to the same double
/// (std::to_chars general form). Integral values print without a point,
/// so file output stays stable and diff-friendly.
inline std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

}  // namespace cyclecover
