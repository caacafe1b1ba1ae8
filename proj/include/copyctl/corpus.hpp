// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "copyctl/errors.hpp"
#include "copyctl/text.hpp"

namespace copyctl {

struct ParallelExample {
  Sentence source;
  Sentence hypothesis;
  std::optional<Sentence> reference;
  std::map<std::string, std::string> meta;
  std::optional<std::vector<std::string>> pos_tags;
};

struct Corpus {
  std::vector<ParallelExample> examples;

  std::size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }
};

// Reads a whole file as lines; LF and CRLF both accepted. A missing final
// newline does not drop the last line.
inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileOpenError(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

namespace detail {

inline void check_line_count(const std::string& path, std::size_t expected,
                             std::size_t actual) {
  if (expected != actual) throw LineCountMismatch(path, expected, actual);
}

// Meta lines are `key=value<TAB>key=value`; an empty line means no metadata.
inline std::map<std::string, std::string> parse_meta(const std::string& line,
                                                     std::size_t line_no) {
  std::map<std::string, std::string> meta;
  if (line.empty()) return meta;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find('\t', start);
    if (end == std::string::npos) end = line.size();
    const std::string pair = line.substr(start, end - start);
    if (!pair.empty()) {
      const std::size_t eq = pair.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw InputError("bad meta entry '" + pair + "' at line " +
                         std::to_string(line_no));
      }
      meta[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    start = end + 1;
  }
  return meta;
}

}  // namespace detail

// Assembles a line-aligned corpus from one-sentence-per-line files. Every
// provided file must have the same number of lines as the source file.
inline Corpus load_parallel(
    const std::string& source_path, const std::string& hypothesis_path,
    const std::optional<std::string>& reference_path = std::nullopt,
    const std::optional<std::string>& meta_path = std::nullopt,
    const std::optional<std::string>& pos_path = std::nullopt,
    bool merge_subwords = false) {
  const std::vector<std::string> src_lines = read_lines(source_path);
  const std::vector<std::string> hyp_lines = read_lines(hypothesis_path);
  detail::check_line_count(hypothesis_path, src_lines.size(),
                           hyp_lines.size());

  std::vector<std::string> ref_lines;
  if (reference_path) {
    ref_lines = read_lines(*reference_path);
    detail::check_line_count(*reference_path, src_lines.size(),
                             ref_lines.size());
  }
  std::vector<std::string> meta_lines;
  if (meta_path) {
    meta_lines = read_lines(*meta_path);
    detail::check_line_count(*meta_path, src_lines.size(), meta_lines.size());
  }
  std::vector<std::string> pos_lines;
  if (pos_path) {
    pos_lines = read_lines(*pos_path);
    detail::check_line_count(*pos_path, src_lines.size(), pos_lines.size());
  }

  Corpus corpus;
  corpus.examples.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    ParallelExample ex;
    ex.source = tokenize(src_lines[i], merge_subwords);
    ex.hypothesis = tokenize(hyp_lines[i], merge_subwords);
    if (reference_path) {
      ex.reference = tokenize(ref_lines[i], merge_subwords);
    }
    if (meta_path) {
      ex.meta = detail::parse_meta(meta_lines[i], i + 1);
    }
    if (pos_path) {
      std::vector<std::string> tags;
      for (const Token& t : tokenize(pos_lines[i]).tokens) {
        tags.push_back(t.surface);
      }
      if (tags.size() != ex.hypothesis.size()) {
        throw PosLengthMismatch(i + 1, tags.size(), ex.hypothesis.size());
      }
      ex.pos_tags = std::move(tags);
    }
    corpus.examples.push_back(std::move(ex));
  }
  return corpus;
}

}  // namespace copyctl
