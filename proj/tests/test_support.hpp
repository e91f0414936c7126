#pragma once

#include <cmath>
#include <cstdlib>
#include <string>

#ifndef CHIPLINK_SOURCE_DIR
#define CHIPLINK_SOURCE_DIR "."
#endif

namespace chiplink::testing {

inline std::string data_path(const std::string& rel) {
    return std::string(CHIPLINK_SOURCE_DIR) + "/data/" + rel;
}

inline bool close_rel(double a, double b, double rel_tol) {
    if (a == b) return true;
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= rel_tol * scale;
}

/// Relative distance of a double to a >19-digit decimal literal, evaluated in
/// long double so the reference carries more precision than the value under
/// test.
inline long double rel_to_ref(double value, const char* ref_decimal) {
    const long double ref = std::strtold(ref_decimal, nullptr);
    if (ref == 0.0L) return value == 0.0 ? 0.0L : 1.0L;
    return std::fabs((static_cast<long double>(value) - ref) / ref);
}

} // namespace chiplink::testing
