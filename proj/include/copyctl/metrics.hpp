// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "copyctl/corpus.hpp"
#include "copyctl/errors.hpp"
#include "copyctl/parallel.hpp"
#include "copyctl/unicode.hpp"

namespace copyctl {

struct CountingConfig {
  // Token matching is case-sensitive by default; proper nouns carry case.
  bool lowercase = false;
  // Punctuation is excluded from both the copy count and the token total.
  // This flag keeps punctuation in the denominator only.
  bool keep_punct_denominator = false;
};

// Copy counts for a corpus, a group, or a POS bucket. copy_errors is only
// meaningful when references were available (has_errors).
struct CopyStats {
  std::size_t copy_tokens = 0;
  std::size_t total_tokens = 0;
  std::size_t copy_errors = 0;
  bool has_errors = true;

  double ratio() const {
    return total_tokens == 0
               ? 0.0
               : static_cast<double>(copy_tokens) / total_tokens;
  }

  // Error rate among copies; undefined (never 0) without copies or
  // without references.
  std::optional<double> cer() const {
    if (!has_errors || copy_tokens == 0) return std::nullopt;
    return static_cast<double>(copy_errors) / copy_tokens;
  }

  CopyStats& operator+=(const CopyStats& other) {
    copy_tokens += other.copy_tokens;
    total_tokens += other.total_tokens;
    copy_errors += other.copy_errors;
    has_errors = has_errors && other.has_errors;
    return *this;
  }
};

struct BucketedStats {
  std::map<std::string, CopyStats> buckets;
  CopyStats total;
};

struct CurvePoint {
  std::string label;
  CopyStats stats;
};

inline std::string match_key(const Token& token, const CountingConfig& cfg) {
  return cfg.lowercase ? lowercase(token.surface) : token.surface;
}

// The set of source word forms that count as copy candidates
// (punctuation excluded).
inline std::unordered_set<std::string> source_word_set(
    const Sentence& source, const CountingConfig& cfg = {}) {
  std::unordered_set<std::string> words;
  for (const Token& t : source.tokens) {
    if (!t.is_punct) words.insert(match_key(t, cfg));
  }
  return words;
}

inline std::unordered_set<std::string> reference_word_set(
    const Sentence& reference, const CountingConfig& cfg = {}) {
  std::unordered_set<std::string> words;
  for (const Token& t : reference.tokens) {
    words.insert(match_key(t, cfg));
  }
  return words;
}

// A non-punctuation hypothesis token is a copy iff its word form appears
// anywhere in the source sentence.
inline bool is_copy_token(const Token& token,
                          const std::unordered_set<std::string>& source_words,
                          const CountingConfig& cfg = {}) {
  return source_words.count(match_key(token, cfg)) > 0;
}

namespace detail {

inline CopyStats count_example(const ParallelExample& ex,
                               const CountingConfig& cfg) {
  CopyStats stats;
  stats.has_errors = ex.reference.has_value();
  const auto src_words = source_word_set(ex.source, cfg);
  std::unordered_set<std::string> ref_words;
  if (ex.reference) ref_words = reference_word_set(*ex.reference, cfg);
  for (const Token& t : ex.hypothesis.tokens) {
    if (t.is_punct) {
      if (cfg.keep_punct_denominator) ++stats.total_tokens;
      continue;
    }
    ++stats.total_tokens;
    if (is_copy_token(t, src_words, cfg)) {
      ++stats.copy_tokens;
      if (ex.reference && ref_words.count(match_key(t, cfg)) == 0) {
        ++stats.copy_errors;
      }
    }
  }
  return stats;
}

inline std::vector<CopyStats> per_example_counts(const Corpus& corpus,
                                                 const CountingConfig& cfg) {
  std::vector<CopyStats> counts(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    counts[i] = count_example(corpus.examples[i], cfg);
  });
  return counts;
}

}  // namespace detail

// Corpus-level Ratio and CER: copies and errors summed over sentences,
// divided only at the end.
inline CopyStats copy_stats(const Corpus& corpus,
                            const CountingConfig& cfg = {}) {
  if (corpus.empty()) throw EmptyCorpus();
  CopyStats total;
  for (const CopyStats& s : detail::per_example_counts(corpus, cfg)) {
    total += s;
  }
  return total;
}

// Copy fraction of a single output sentence; 0 when it has no countable
// tokens.
inline double sentence_overlap(const ParallelExample& ex,
                               const CountingConfig& cfg = {}) {
  const CopyStats s = detail::count_example(ex, cfg);
  return s.total_tokens == 0
             ? 0.0
             : static_cast<double>(s.copy_tokens) / s.total_tokens;
}

// Number of sentences whose overlap strictly exceeds the threshold.
inline std::size_t count_high_overlap(const Corpus& corpus,
                                      double threshold = 0.5,
                                      const CountingConfig& cfg = {}) {
  std::vector<CopyStats> counts = detail::per_example_counts(corpus, cfg);
  std::size_t n = 0;
  for (const CopyStats& s : counts) {
    if (s.total_tokens == 0) continue;
    if (static_cast<double>(s.copy_tokens) / s.total_tokens > threshold) ++n;
  }
  return n;
}

// The coarse POS buckets used for word-accuracy reports.
inline std::map<std::string, std::string> default_pos_buckets() {
  return {{"PROPN", "PROPN"}, {"ADP", "ADP"}, {"NUM", "NUM"}, {"NOUN", "NOUN"}};
}

// Buckets copy tokens by the POS tag of the hypothesis position. Bucket
// ratios share the corpus-wide token total as denominator, so they sum to
// the overall ratio; CER* divides each bucket's errors by its own copies.
inline BucketedStats bucket_by_pos(
    const Corpus& corpus, const std::map<std::string, std::string>& coarse_map,
    const CountingConfig& cfg = {}) {
  if (corpus.empty()) throw EmptyCorpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!corpus.examples[i].pos_tags) throw MissingPos(i + 1);
  }

  BucketedStats out;
  out.total = copy_stats(corpus, cfg);
  for (const auto& [tag, bucket] : coarse_map) {
    out.buckets[bucket];  // stable report columns even when empty
  }
  out.buckets["Others"];

  for (const ParallelExample& ex : corpus.examples) {
    const auto src_words = source_word_set(ex.source, cfg);
    std::unordered_set<std::string> ref_words;
    if (ex.reference) ref_words = reference_word_set(*ex.reference, cfg);
    const std::vector<std::string>& tags = *ex.pos_tags;
    for (std::size_t j = 0; j < ex.hypothesis.size(); ++j) {
      const Token& t = ex.hypothesis.tokens[j];
      if (t.is_punct || !is_copy_token(t, src_words, cfg)) continue;
      auto it = coarse_map.find(tags[j]);
      const std::string bucket =
          it == coarse_map.end() ? std::string("Others") : it->second;
      CopyStats& s = out.buckets[bucket];
      ++s.copy_tokens;
      if (ex.reference && ref_words.count(match_key(t, cfg)) == 0) {
        ++s.copy_errors;
      }
    }
  }
  for (auto& [bucket, s] : out.buckets) {
    s.total_tokens = out.total.total_tokens;
    s.has_errors = out.total.has_errors;
  }
  return out;
}

// Partitions the corpus by a metadata key (e.g. origin=src-ori|tgt-ori)
// and reports per-group stats.
inline std::map<std::string, CopyStats> group_by_key(
    const Corpus& corpus, const std::string& meta_key,
    const CountingConfig& cfg = {}) {
  if (corpus.empty()) throw EmptyCorpus();
  std::vector<const std::string*> values(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto it = corpus.examples[i].meta.find(meta_key);
    if (it == corpus.examples[i].meta.end()) {
      throw MissingMeta(meta_key, i + 1);
    }
    values[i] = &it->second;
  }
  const std::vector<CopyStats> counts = detail::per_example_counts(corpus, cfg);
  std::map<std::string, CopyStats> groups;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    groups[*values[i]] += counts[i];
  }
  return groups;
}

// One Ratio/CER point per hypothesis file, e.g. per training checkpoint.
inline std::vector<CurvePoint> learning_curve(
    const std::string& source_path, const std::string& reference_path,
    const std::vector<std::string>& hypothesis_paths,
    const CountingConfig& cfg = {}, bool merge_subwords = false) {
  std::vector<CurvePoint> curve;
  std::set<std::string> used;
  for (std::size_t i = 0; i < hypothesis_paths.size(); ++i) {
    const std::string& path = hypothesis_paths[i];
    const Corpus corpus =
        load_parallel(source_path, path, reference_path, std::nullopt,
                      std::nullopt, merge_subwords);
    // Labels stay unique: fall back to the path, then the position.
    std::string label = std::filesystem::path(path).stem().string();
    if (used.count(label)) label = path;
    if (used.count(label)) label = path + "#" + std::to_string(i + 1);
    used.insert(label);
    curve.push_back({std::move(label), copy_stats(corpus, cfg)});
  }
  return curve;
}

}  // namespace copyctl
