#pragma once

#include <charconv>
#include <string>

namespace pabn::detail {

// Shortest decimal that round-trips the value.
template <class F>
std::string fmt_number(F v) {
  char buf[48];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace pabn::detail
