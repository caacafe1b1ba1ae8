// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "copyctl/unicode_data.hpp"

namespace copyctl {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes the UTF-8 sequence starting at s[pos], advancing pos past it.
// Malformed bytes decode to U+FFFD and consume a single byte, so iteration
// always terminates.
inline char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) -> unsigned char {
    return static_cast<unsigned char>(s[i]);
  };
  const unsigned char b0 = byte(pos);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  int len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kReplacementChar;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kReplacementChar;
  }
  for (int i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kReplacementChar;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  if (cp > 0x10FFFF) return kReplacementChar;
  return cp;
}

inline void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// True iff cp belongs to one of the Unicode punctuation or symbol
// general categories (P* and S*).
inline bool is_punct_or_symbol(char32_t cp) {
  const auto& table = unicode_data::kPunctOrSymbol;
  auto it = std::upper_bound(
      table.begin(), table.end(), cp,
      [](char32_t c, const unicode_data::CpRange& r) { return c < r.first; });
  if (it == table.begin()) return false;
  --it;
  return cp <= it->last;
}

inline bool is_whitespace(char32_t cp) {
  const auto& table = unicode_data::kWhitespace;
  return std::binary_search(table.begin(), table.end(), cp);
}

inline char32_t to_lower(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'A' && cp <= U'Z') ? cp + 0x20 : cp;
  }
  const auto& table = unicode_data::kToLower;
  auto it = std::lower_bound(
      table.begin(), table.end(), cp,
      [](const unicode_data::CaseMap& m, char32_t c) { return m.upper < c; });
  if (it != table.end() && it->upper == cp) return it->lower;
  return cp;
}

inline std::string lowercase(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t pos = 0;
  while (pos < s.size()) {
    encode_utf8(to_lower(decode_utf8(s, pos)), out);
  }
  return out;
}

// A whole token is punctuation iff every codepoint is in the P*/S*
// categories. Empty strings are not punctuation.
inline bool is_punct_token(std::string_view surface) {
  if (surface.empty()) return false;
  std::size_t pos = 0;
  while (pos < surface.size()) {
    if (!is_punct_or_symbol(decode_utf8(surface, pos))) return false;
  }
  return true;
}

}  // namespace copyctl
