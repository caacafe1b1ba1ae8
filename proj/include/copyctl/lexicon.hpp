// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "copyctl/corpus.hpp"
#include "copyctl/errors.hpp"
#include "copyctl/model.hpp"
#include "copyctl/text.hpp"
#include "copyctl/vocab.hpp"

namespace copyctl {

// Log-probability floor standing in for -inf so arithmetic stays total.
inline constexpr double kLogFloor = -1e9;

// Word-for-word translation model: step t spreads the lexicon row of
// source word t over the vocabulary, an unknown source word maps to unk
// with probability 1, and after |source| emissions eos has probability 1.
// Output length is fixed per source, which keeps exhaustive enumeration
// trivial.
class LexiconModel : public ScoringModel {
 public:
  using Row = std::vector<std::pair<TokenId, double>>;  // (id, logprob)

  LexiconModel(Vocabulary vocab,
               std::unordered_map<std::string, Row> rows)
      : vocab_(std::move(vocab)), rows_(std::move(rows)) {}

  const Vocabulary& vocab() const { return vocab_; }

  // The positive-probability targets for a source word, or nullptr when
  // the word falls back to unk.
  const Row* row(const std::string& source_word) const {
    auto it = rows_.find(source_word);
    return it == rows_.end() ? nullptr : &it->second;
  }

  std::vector<double> next_logprobs(
      const Sentence& source,
      const std::vector<TokenId>& prefix) const override {
    const std::size_t t = prefix.size();
    if (t > source.size()) throw PrefixTooLong(t, source.size());
    std::vector<double> logprobs(vocab_.size(), kLogFloor);
    if (t == source.size()) {
      logprobs[vocab_.eos()] = 0.0;
      return logprobs;
    }
    if (const Row* r = row(source.tokens[t].surface)) {
      for (const auto& [id, lp] : *r) {
        logprobs[id] = lp;
      }
    } else {
      logprobs[vocab_.unk()] = 0.0;
    }
    return logprobs;
  }

 private:
  Vocabulary vocab_;
  std::unordered_map<std::string, Row> rows_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits a lexicon line into source word and target list; the separator is
// a tab or a "→".
inline bool split_lexicon_line(std::string_view line, std::string_view& word,
                               std::string_view& targets) {
  constexpr std::string_view arrow = "\xE2\x86\x92";
  std::size_t pos = line.find('\t');
  std::size_t sep_len = 1;
  const std::size_t arrow_pos = line.find(arrow);
  if (arrow_pos != std::string_view::npos &&
      (pos == std::string_view::npos || arrow_pos < pos)) {
    pos = arrow_pos;
    sep_len = arrow.size();
  }
  if (pos == std::string_view::npos) return false;
  word = trim(line.substr(0, pos));
  targets = trim(line.substr(pos + sep_len));
  return true;
}

}  // namespace detail

// Parses a lexicon spec: `word<TAB>target:prob,target:prob` per line,
// `#` comments and blank lines skipped. Builds the implied vocabulary
// (reserved ids, then target words in file order) and validates every
// distribution.
inline LexiconModel parse_lexicon(const std::vector<std::string>& lines) {
  Vocabulary vocab;
  std::unordered_map<std::string, LexiconModel::Row> rows;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = detail::trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;

    std::string_view word_sv, targets_sv;
    if (!detail::split_lexicon_line(line, word_sv, targets_sv) ||
        word_sv.empty() || targets_sv.empty()) {
      throw InputError("bad lexicon line " + std::to_string(i + 1) + ": '" +
                       std::string(line) + "'");
    }
    const std::string word(word_sv);
    if (rows.count(word)) throw DuplicateEntry(word);

    // Repeated targets within a row accumulate.
    std::map<std::string, double> dist;
    std::vector<std::string> order;
    double sum = 0.0;
    std::size_t start = 0;
    const std::string targets(targets_sv);
    while (start <= targets.size()) {
      std::size_t end = targets.find(',', start);
      if (end == std::string::npos) end = targets.size();
      const std::string entry(
          detail::trim(std::string_view(targets).substr(start, end - start)));
      start = end + 1;
      if (entry.empty()) continue;
      const std::size_t colon = entry.rfind(':');
      if (colon == std::string::npos || colon == 0) {
        throw InputError("bad lexicon target '" + entry + "' at line " +
                         std::to_string(i + 1));
      }
      const std::string target = entry.substr(0, colon);
      char* parse_end = nullptr;
      const std::string prob_str = entry.substr(colon + 1);
      const double prob = std::strtod(prob_str.c_str(), &parse_end);
      if (parse_end == prob_str.c_str() || *parse_end != '\0') {
        throw InputError("bad probability '" + prob_str + "' at line " +
                         std::to_string(i + 1));
      }
      if (!(prob > 0.0)) throw BadDistribution(word);
      if (dist.emplace(target, 0.0).second) order.push_back(target);
      dist[target] += prob;
      sum += prob;
    }
    if (std::abs(sum - 1.0) > 1e-6) throw BadDistribution(word);

    LexiconModel::Row row;
    row.reserve(order.size());
    for (const std::string& target : order) {
      row.emplace_back(vocab.add(target), std::log(dist[target]));
    }
    rows.emplace(word, std::move(row));
  }
  return LexiconModel(std::move(vocab), std::move(rows));
}

inline LexiconModel build_lexicon(const std::string& spec_path) {
  return parse_lexicon(read_lines(spec_path));
}

}  // namespace copyctl
