// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "copyctl/unicode.hpp"

namespace copyctl {

// BPE continuation marker ("Feld@@ marschall") and sentencepiece word
// boundary marker (U+2581).
inline constexpr std::string_view kBpeMarker = "@@";
inline constexpr std::string_view kSpMarker = "\xE2\x96\x81";

struct Token {
  std::string surface;
  bool is_punct = false;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string raw;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  // Tokens joined with single spaces; the detokenized form of the sentence.
  std::string joined() const {
    std::string out;
    for (const Token& t : tokens) {
      if (!out.empty()) out.push_back(' ');
      out += t.surface;
    }
    return out;
  }
};

// Splits on Unicode whitespace; empty input gives an empty list.
inline std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> pieces;
  std::string cur;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t start = pos;
    const char32_t cp = decode_utf8(line, pos);
    if (is_whitespace(cp)) {
      if (!cur.empty()) {
        pieces.push_back(std::move(cur));
        cur.clear();
      }
    } else {
      cur.append(line.substr(start, pos - start));
    }
  }
  if (!cur.empty()) pieces.push_back(std::move(cur));
  return pieces;
}

inline std::string whitespace_normalize(std::string_view line) {
  std::string out;
  for (const std::string& p : split_whitespace(line)) {
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

namespace detail {

inline bool ends_with_bpe_marker(std::string_view piece) {
  return piece.size() >= kBpeMarker.size() &&
         piece.substr(piece.size() - kBpeMarker.size()) == kBpeMarker;
}

// "Feld@@ marschall war" -> "Feldmarschall war"; chains of continuations
// collapse into one word.
inline std::vector<std::string> merge_bpe(std::vector<std::string> pieces) {
  std::vector<std::string> out;
  std::string word;
  for (std::string& piece : pieces) {
    if (ends_with_bpe_marker(piece)) {
      word += piece.substr(0, piece.size() - kBpeMarker.size());
    } else {
      word += piece;
      out.push_back(std::move(word));
      word.clear();
    }
  }
  // A trailing continuation has no successor; keep what it carried.
  if (!word.empty()) out.push_back(std::move(word));
  return out;
}

inline std::string strip_sp_markers(std::string_view piece) {
  std::string out;
  std::size_t pos = 0;
  while (pos < piece.size()) {
    if (piece.substr(pos, kSpMarker.size()) == kSpMarker) {
      pos += kSpMarker.size();
    } else {
      out.push_back(piece[pos]);
      ++pos;
    }
  }
  return out;
}

// "▁Mili tär führer ▁war" -> "Militärführer war". Only applied when the
// boundary marker occurs somewhere in the line, otherwise every piece
// would glue onto its predecessor.
inline std::vector<std::string> merge_sentencepiece(
    const std::vector<std::string>& pieces) {
  std::vector<std::string> out;
  for (const std::string& piece : pieces) {
    const bool starts_word =
        piece.substr(0, kSpMarker.size()) == kSpMarker || out.empty();
    std::string body = strip_sp_markers(piece);
    if (starts_word) {
      out.push_back(std::move(body));
    } else {
      out.back() += body;
    }
  }
  return out;
}

inline bool has_sp_marker(const std::vector<std::string>& pieces) {
  for (const std::string& p : pieces) {
    if (p.find(kSpMarker) != std::string::npos) return true;
  }
  return false;
}

}  // namespace detail

// Whitespace-splits a line into word tokens and classifies punctuation.
// With merge_subwords, BPE continuations and sentencepiece pieces are
// first joined back into whole words.
inline Sentence tokenize(std::string_view line, bool merge_subwords = false) {
  std::vector<std::string> pieces = split_whitespace(line);
  if (merge_subwords) {
    pieces = detail::merge_bpe(std::move(pieces));
    if (detail::has_sp_marker(pieces)) {
      pieces = detail::merge_sentencepiece(pieces);
    }
  }
  Sentence sentence;
  sentence.raw = std::string(line);
  sentence.tokens.reserve(pieces.size());
  for (std::string& piece : pieces) {
    if (piece.empty()) continue;  // a bare marker merged away entirely
    Token token;
    token.is_punct = is_punct_token(piece);
    token.surface = std::move(piece);
    sentence.tokens.push_back(std::move(token));
  }
  return sentence;
}

}  // namespace copyctl
