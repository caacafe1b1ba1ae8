// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "copyctl/bleu.hpp"
#include "copyctl/corpus.hpp"
#include "copyctl/decoder.hpp"
#include "copyctl/metrics.hpp"
#include "copyctl/model.hpp"
#include "copyctl/parallel.hpp"

namespace copyctl {

// Turns a decode into a word Sentence: surfaces of the emitted ids, the
// terminating eos dropped.
inline Sentence hypothesis_to_sentence(const Hypothesis& hyp,
                                       const Vocabulary& vocab) {
  Sentence out;
  for (const TokenId id : hyp.tokens) {
    if (id == vocab.eos()) continue;
    out.tokens.push_back({vocab.surface(id), vocab.is_punct(id)});
  }
  out.raw = out.joined();
  return out;
}

// Decodes every source sentence; results are assembled in input order, so
// output never depends on scheduling. max_len is clamped per sentence to
// source length + eos, which position-monotone models require and which
// never changes the argmax for them.
inline std::vector<Hypothesis> decode_corpus(const ScoringModel& model,
                                             const std::vector<Sentence>& sources,
                                             const Vocabulary& vocab,
                                             const PenaltyConfig& config,
                                             bool use_oracle = false) {
  config.validate();
  std::vector<Hypothesis> out(sources.size());
  parallel_for(sources.size(), [&](std::size_t i) {
    PenaltyConfig effective = config;
    effective.max_len = std::min(config.max_len, sources[i].size() + 1);
    if (use_oracle) {
      out[i] = exhaustive_decode(model, sources[i], vocab, effective);
    } else {
      out[i] = beam_search(model, sources[i], vocab, effective).front();
    }
  });
  return out;
}

struct SweepRow {
  double alpha = 1.0;
  CopyStats stats;
  double bleu = 0.0;
};

// Decodes the corpus once per alpha and reports (Ratio, CER, BLEU) rows,
// ready for TSV emission or plotting.
inline std::vector<SweepRow> penalty_sweep(
    const ScoringModel& model, const std::vector<Sentence>& sources,
    const std::vector<Sentence>& references, const Vocabulary& vocab,
    const PenaltyConfig& base_config, const std::vector<double>& alphas,
    bool use_oracle = false, const CountingConfig& counting = {}) {
  if (sources.size() != references.size()) {
    throw LineCountMismatch("references", sources.size(), references.size());
  }
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size());
  for (const double alpha : alphas) {
    PenaltyConfig config = base_config;
    config.alpha = alpha;
    const std::vector<Hypothesis> decoded =
        decode_corpus(model, sources, vocab, config, use_oracle);

    Corpus corpus;
    std::vector<Sentence> hyp_sentences;
    corpus.examples.reserve(sources.size());
    hyp_sentences.reserve(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
      ParallelExample ex;
      ex.source = sources[i];
      ex.hypothesis = hypothesis_to_sentence(decoded[i], vocab);
      ex.reference = references[i];
      hyp_sentences.push_back(ex.hypothesis);
      corpus.examples.push_back(std::move(ex));
    }

    SweepRow row;
    row.alpha = alpha;
    row.stats = copy_stats(corpus, counting);
    row.bleu = corpus_bleu(hyp_sentences, references);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace copyctl
