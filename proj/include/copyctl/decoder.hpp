// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "copyctl/errors.hpp"
#include "copyctl/model.hpp"
#include "copyctl/text.hpp"
#include "copyctl/vocab.hpp"

namespace copyctl {

struct PenaltyConfig {
  double alpha = 1.0;  // 1 means no penalty; <1 discourages copying
  double length_exp = 0.0;
  std::size_t beam = 5;
  std::size_t max_len = 128;  // bounds the whole decode, eos included

  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw InputError("alpha must be a positive finite number");
    }
    if (!(length_exp >= 0.0) || !std::isfinite(length_exp)) {
      throw InputError("length exponent must be non-negative");
    }
    if (beam < 1) throw InputError("beam must be at least 1");
    if (max_len < 1) throw InputError("max length must be at least 1");
  }
};

// A complete decode ends in eos. penalized_logprob carries copy_count
// applications of ln(alpha) on top of raw_logprob; score is the
// length-normalized penalized log-probability.
struct Hypothesis {
  std::vector<TokenId> tokens;
  double raw_logprob = 0.0;
  double penalized_logprob = 0.0;
  std::size_t copy_count = 0;
  double score = 0.0;
};

// True iff vocabulary entry v matches a non-punctuation source token; the
// reserved ids and punctuation entries are never penalized.
inline std::vector<char> copy_mask(const Sentence& source,
                                   const Vocabulary& vocab) {
  std::vector<char> mask(vocab.size(), 0);
  for (const Token& t : source.tokens) {
    if (t.is_punct) continue;
    const std::optional<TokenId> id = vocab.id_of(t.surface);
    if (!id || vocab.is_reserved(*id) || vocab.is_punct(*id)) continue;
    mask[*id] = 1;
  }
  return mask;
}

// Adds ln(alpha) to masked entries; everything else keeps its probability.
// The adjusted values feed the search directly, without renormalization.
inline std::vector<double> apply_copy_penalty(std::vector<double> logprobs,
                                              const std::vector<char>& mask,
                                              double alpha) {
  if (alpha == 1.0) return logprobs;
  const double log_alpha = std::log(alpha);
  for (std::size_t v = 0; v < logprobs.size() && v < mask.size(); ++v) {
    if (mask[v]) logprobs[v] += log_alpha;
  }
  return logprobs;
}

// GNMT length normalizer ((5 + len) / 6)^length_exp; the final score is the
// penalized log-probability divided by this.
inline double length_norm(std::size_t len, double length_exp) {
  return std::pow((5.0 + static_cast<double>(len)) / 6.0, length_exp);
}

namespace detail {

// Ranking for complete hypotheses: best score, then earliest completion,
// then lowest token-id sequence. Total order, so results never depend on
// sort stability.
inline bool better_final(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.tokens.size() != b.tokens.size()) {
    return a.tokens.size() < b.tokens.size();
  }
  return a.tokens < b.tokens;
}

inline bool better_live(const Hypothesis& a, const Hypothesis& b) {
  if (a.penalized_logprob != b.penalized_logprob) {
    return a.penalized_logprob > b.penalized_logprob;
  }
  return a.tokens < b.tokens;
}

inline std::vector<double> query_model(const ScoringModel& model,
                                       const Sentence& source,
                                       const std::vector<TokenId>& prefix,
                                       std::size_t vocab_size) {
  std::vector<double> logprobs = model.next_logprobs(source, prefix);
  if (logprobs.size() != vocab_size) {
    throw ModelVocabMismatch(logprobs.size(), vocab_size);
  }
  return logprobs;
}

}  // namespace detail

// Beam search over penalized per-step log-probabilities. Hypotheses retire
// on eos and eos is forced once a hypothesis can only reach max_len total
// tokens by terminating; the returned list holds every retired hypothesis,
// ranked.
inline std::vector<Hypothesis> beam_search(const ScoringModel& model,
                                           const Sentence& source,
                                           const Vocabulary& vocab,
                                           const PenaltyConfig& config) {
  config.validate();
  const std::size_t V = vocab.size();
  const TokenId eos = vocab.eos();
  const std::vector<char> mask = copy_mask(source, vocab);
  const double log_alpha = std::log(config.alpha);
  const std::size_t content_cap = config.max_len - 1;

  // The penalized log-probability is kept as raw + copy_count * ln(alpha) so
  // the accounting identity holds to the bit even for hypotheses that pass
  // through the log-probability floor, where stepwise accumulation would
  // shed the penalty's low bits.
  const auto penalize = [log_alpha](double raw_logprob, std::size_t copies) {
    return raw_logprob + static_cast<double>(copies) * log_alpha;
  };

  std::vector<Hypothesis> live(1);
  std::vector<Hypothesis> completed;

  for (std::size_t step = 0; step <= content_cap; ++step) {
    const bool force_eos = step == content_cap;
    std::vector<Hypothesis> candidates;
    for (const Hypothesis& hyp : live) {
      const std::vector<double> raw =
          detail::query_model(model, source, hyp.tokens, V);

      Hypothesis done = hyp;
      done.tokens.push_back(eos);
      done.raw_logprob += raw[eos];  // eos is never penalized
      done.penalized_logprob = penalize(done.raw_logprob, done.copy_count);
      done.score =
          done.penalized_logprob / length_norm(done.tokens.size(), config.length_exp);
      completed.push_back(std::move(done));

      if (force_eos) continue;
      for (TokenId v = 0; v < V; ++v) {
        if (v == eos) continue;
        Hypothesis ext = hyp;
        ext.tokens.push_back(v);
        ext.raw_logprob += raw[v];
        if (mask[v]) ++ext.copy_count;
        ext.penalized_logprob = penalize(ext.raw_logprob, ext.copy_count);
        candidates.push_back(std::move(ext));
      }
    }
    if (force_eos) break;
    if (candidates.size() > config.beam) {
      std::partial_sort(candidates.begin(), candidates.begin() + config.beam,
                        candidates.end(), detail::better_live);
      candidates.resize(config.beam);
    } else {
      std::sort(candidates.begin(), candidates.end(), detail::better_live);
    }
    live = std::move(candidates);
  }

  std::sort(completed.begin(), completed.end(), detail::better_final);
  return completed;
}

// Enumerates every eos-terminated sequence of up to max_len tokens and
// returns the argmax under exactly the beam_search scoring and tie-break.
// Verification oracle; cost is on the order of V^max_len.
inline Hypothesis exhaustive_decode(const ScoringModel& model,
                                    const Sentence& source,
                                    const Vocabulary& vocab,
                                    const PenaltyConfig& config) {
  config.validate();
  const std::size_t V = vocab.size();
  if (std::pow(static_cast<double>(V), static_cast<double>(config.max_len)) >
      1e7) {
    throw SearchSpaceTooLarge(V, config.max_len);
  }
  const TokenId eos = vocab.eos();
  const std::vector<char> mask = copy_mask(source, vocab);
  const double log_alpha = std::log(config.alpha);

  std::optional<Hypothesis> best;
  std::vector<TokenId> tokens;

  // Raw sums are passed by value so every path accumulates left to right,
  // exactly as beam_search does; backtracking by subtraction would drift.
  // Penalties enter as copy_count * ln(alpha), matching beam_search's
  // scoring to the bit.
  const auto dfs = [&](auto&& self, double raw_sum,
                       std::size_t copies) -> void {
    const std::vector<double> raw =
        detail::query_model(model, source, tokens, V);

    Hypothesis done;
    done.tokens = tokens;
    done.tokens.push_back(eos);
    done.raw_logprob = raw_sum + raw[eos];
    done.copy_count = copies;
    done.penalized_logprob =
        done.raw_logprob + static_cast<double>(copies) * log_alpha;
    done.score = done.penalized_logprob /
                 length_norm(done.tokens.size(), config.length_exp);
    if (!best || detail::better_final(done, *best)) best = done;

    if (tokens.size() + 1 == config.max_len) return;
    for (TokenId v = 0; v < V; ++v) {
      if (v == eos) continue;
      tokens.push_back(v);
      self(self, raw_sum + raw[v], copies + (mask[v] ? 1 : 0));
      tokens.pop_back();
    }
  };
  dfs(dfs, 0.0, 0);
  return *best;
}

}  // namespace copyctl
