#pragma once

#include <cstdint>
#include <string>

namespace aiaefa {

/// Locale-independent scientific formatting with 9 significant digits,
/// e.g. 1.44700000e+01. NaN renders as an empty field.
std::string format_double(double value);

std::string format_int(long long value);
std::string format_uint(std::uint64_t value);

}  // namespace aiaefa
