// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "copyctl/corpus.hpp"
#include "copyctl/errors.hpp"

namespace copyctl {

namespace detail {

// N-grams keyed by tokens joined with '\n'; tokens cannot contain
// whitespace, so the separator never collides.
inline std::unordered_map<std::string, std::size_t> ngram_counts(
    const Sentence& sentence, std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (sentence.size() < n) return counts;
  for (std::size_t i = 0; i + n <= sentence.size(); ++i) {
    std::string key = sentence.tokens[i].surface;
    for (std::size_t j = 1; j < n; ++j) {
      key.push_back('\n');
      key += sentence.tokens[i + j].surface;
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace detail

// Unsmoothed corpus-level 4-gram BLEU on word tokens, scaled to [0, 100].
// Clipped n-gram precisions are combined by geometric mean over the orders
// that occur in the hypothesis corpus; a zero precision at any occurring
// order gives 0. Brevity penalty is exp(min(0, 1 - ref_len/hyp_len)).
inline double corpus_bleu(const std::vector<Sentence>& hypotheses,
                          const std::vector<Sentence>& references,
                          std::size_t max_n = 4) {
  if (hypotheses.size() != references.size()) {
    throw LineCountMismatch("references", hypotheses.size(),
                            references.size());
  }
  std::vector<std::size_t> matched(max_n, 0);
  std::vector<std::size_t> total(max_n, 0);
  std::size_t hyp_len = 0;
  std::size_t ref_len = 0;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    hyp_len += hypotheses[i].size();
    ref_len += references[i].size();
    for (std::size_t n = 1; n <= max_n; ++n) {
      const auto hyp_ngrams = detail::ngram_counts(hypotheses[i], n);
      if (hyp_ngrams.empty()) continue;
      const auto ref_ngrams = detail::ngram_counts(references[i], n);
      for (const auto& [key, count] : hyp_ngrams) {
        total[n - 1] += count;
        auto it = ref_ngrams.find(key);
        if (it != ref_ngrams.end()) {
          matched[n - 1] += std::min(count, it->second);
        }
      }
    }
  }
  if (hyp_len == 0) return 0.0;

  double log_precision = 0.0;
  std::size_t orders = 0;
  for (std::size_t n = 0; n < max_n; ++n) {
    if (total[n] == 0) continue;
    if (matched[n] == 0) return 0.0;
    log_precision +=
        std::log(static_cast<double>(matched[n]) / static_cast<double>(total[n]));
    ++orders;
  }
  if (orders == 0) return 0.0;

  const double bp = std::exp(
      std::min(0.0, 1.0 - static_cast<double>(ref_len) /
                              static_cast<double>(hyp_len)));
  return 100.0 * bp * std::exp(log_precision / static_cast<double>(orders));
}

// BLEU of a loaded corpus' hypotheses against its references.
inline double corpus_bleu(const Corpus& corpus, std::size_t max_n = 4) {
  std::vector<Sentence> hyps;
  std::vector<Sentence> refs;
  hyps.reserve(corpus.size());
  refs.reserve(corpus.size());
  for (const ParallelExample& ex : corpus.examples) {
    if (!ex.reference) {
      throw InputError("BLEU requires a reference for every sentence");
    }
    hyps.push_back(ex.hypothesis);
    refs.push_back(*ex.reference);
  }
  return corpus_bleu(hyps, refs, max_n);
}

}  // namespace copyctl
