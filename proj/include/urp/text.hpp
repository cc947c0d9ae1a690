#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "urp/errors.hpp"
#include "urp/integer.hpp"

namespace urp {

// Base-10 with an optional leading '-'.
inline Integer parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  bool ok = !digits.empty();
  for (char ch : digits) ok = ok && ch >= '0' && ch <= '9';
  if (!ok) throw InvalidInput("expected an integer, got '" + std::string(text) + "'");
  return Integer(std::string(text));
}

inline std::uint64_t parse_u64(std::string_view text) {
  Integer v = parse_integer(text);
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max())
    throw InvalidInput("value out of range: '" + std::string(text) + "'");
  return v.convert_to<std::uint64_t>();
}

inline std::size_t to_size(const Integer& v) {
  if (v < 0 || v > std::numeric_limits<std::size_t>::max())
    throw LimitExceeded("value does not fit an index: " + v.str());
  return v.convert_to<std::size_t>();
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename Range>
std::string join(const Range& values, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += sep;
    first = false;
    if constexpr (std::is_integral_v<std::decay_t<decltype(v)>>)
      out += std::to_string(v);
    else
      out += to_string(v);
  }
  return out;
}

}  // namespace urp
