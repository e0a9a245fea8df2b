#include "aiaefa/csv.hpp"

#include <charconv>
#include <cmath>

namespace aiaefa {

std::string format_double(double value) {
  if (std::isnan(value)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::scientific, 8);
  return std::string(buf, res.ptr);
}

std::string format_int(long long value) { return std::to_string(value); }

std::string format_uint(std::uint64_t value) { return std::to_string(value); }

}  // namespace aiaefa
