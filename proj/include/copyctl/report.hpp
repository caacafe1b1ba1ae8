// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "copyctl/decoder.hpp"
#include "copyctl/metrics.hpp"
#include "copyctl/sweep.hpp"

namespace copyctl {

// All fractions are emitted with six decimal places in both JSON and TSV,
// so the two renderings always carry identical numbers.
inline std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

// One-decimal percent, e.g. "10.8%".
inline std::string percent1(double fraction) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f%%", fraction * 100.0);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

namespace detail {

// The shared copy-stats fields of every report row.
inline void append_stats_json(std::string& out, const CopyStats& s,
                              const char* sep = ", ") {
  out += "\"copy_tokens\": " + std::to_string(s.copy_tokens);
  out += sep;
  out += "\"total_tokens\": " + std::to_string(s.total_tokens);
  out += sep;
  out += "\"copy_errors\": ";
  out += s.has_errors ? std::to_string(s.copy_errors) : "null";
  out += sep;
  out += "\"ratio\": " + fixed6(s.ratio());
  out += sep;
  out += "\"ratio_percent\": \"" + percent1(s.ratio()) + "\"";
  const std::optional<double> cer = s.cer();
  out += sep;
  out += "\"cer\": ";
  out += cer ? fixed6(*cer) : "null";
  out += sep;
  out += "\"cer_percent\": ";
  out += cer ? "\"" + percent1(*cer) + "\"" : "null";
}

inline constexpr const char* kStatsTsvHeader =
    "copy_tokens\ttotal_tokens\tcopy_errors\tratio\tratio_percent\tcer\tcer_"
    "percent";

inline void append_stats_tsv(std::string& out, const CopyStats& s) {
  out += std::to_string(s.copy_tokens);
  out += '\t';
  out += std::to_string(s.total_tokens);
  out += '\t';
  out += s.has_errors ? std::to_string(s.copy_errors) : "-";
  out += '\t';
  out += fixed6(s.ratio());
  out += '\t';
  out += percent1(s.ratio());
  const std::optional<double> cer = s.cer();
  out += '\t';
  out += cer ? fixed6(*cer) : "-";
  out += '\t';
  out += cer ? percent1(*cer) : "-";
}

// Report order for POS buckets: the standard coarse buckets first, other
// buckets alphabetically, Others last.
inline std::vector<std::string> bucket_order(const BucketedStats& stats) {
  std::vector<std::string> order;
  for (const char* name : {"PROPN", "ADP", "NUM", "NOUN"}) {
    if (stats.buckets.count(name)) order.push_back(name);
  }
  for (const auto& [name, s] : stats.buckets) {
    if (name == "PROPN" || name == "ADP" || name == "NUM" || name == "NOUN" ||
        name == "Others") {
      continue;
    }
    order.push_back(name);
  }
  if (stats.buckets.count("Others")) order.push_back("Others");
  return order;
}

}  // namespace detail

struct AnalyzeReport {
  std::size_t sentences = 0;
  CopyStats stats;
  double overlap_threshold = 0.5;
  std::size_t high_overlap = 0;
  std::optional<double> bleu;
};

inline std::string render_json(const AnalyzeReport& r) {
  std::string out = "{\n  \"sentences\": " + std::to_string(r.sentences);
  out += ",\n  ";
  detail::append_stats_json(out, r.stats, ",\n  ");
  out += ",\n  \"overlap_threshold\": " + fixed6(r.overlap_threshold);
  out += ",\n  \"high_overlap_sentences\": " + std::to_string(r.high_overlap);
  if (r.bleu) out += ",\n  \"bleu\": " + fixed6(*r.bleu);
  out += "\n}\n";
  return out;
}

inline std::string render_tsv(const AnalyzeReport& r) {
  std::string out = "sentences\t";
  out += detail::kStatsTsvHeader;
  out += "\thigh_overlap_sentences\tbleu\n";
  out += std::to_string(r.sentences);
  out += '\t';
  detail::append_stats_tsv(out, r.stats);
  out += '\t';
  out += std::to_string(r.high_overlap);
  out += '\t';
  out += r.bleu ? fixed6(*r.bleu) : "-";
  out += '\n';
  return out;
}

inline std::string render_json(const std::vector<CurvePoint>& curve) {
  std::string out = "{\n  \"points\": [";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"label\": \"" + json_escape(curve[i].label) + "\", ";
    detail::append_stats_json(out, curve[i].stats);
    out += "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

inline std::string render_tsv(const std::vector<CurvePoint>& curve) {
  std::string out = "label\t";
  out += detail::kStatsTsvHeader;
  out += '\n';
  for (const CurvePoint& p : curve) {
    out += p.label;
    out += '\t';
    detail::append_stats_tsv(out, p.stats);
    out += '\n';
  }
  return out;
}

inline std::string render_json(const BucketedStats& stats) {
  std::string out = "{\n  \"total\": {";
  detail::append_stats_json(out, stats.total);
  out += "},\n  \"buckets\": [";
  const std::vector<std::string> order = detail::bucket_order(stats);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"bucket\": \"" + json_escape(order[i]) + "\", ";
    detail::append_stats_json(out, stats.buckets.at(order[i]));
    out += "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

inline std::string render_tsv(const BucketedStats& stats) {
  std::string out = "bucket\t";
  out += detail::kStatsTsvHeader;
  out += "\nTotal\t";
  detail::append_stats_tsv(out, stats.total);
  out += '\n';
  for (const std::string& name : detail::bucket_order(stats)) {
    out += name;
    out += '\t';
    detail::append_stats_tsv(out, stats.buckets.at(name));
    out += '\n';
  }
  return out;
}

inline std::string render_json(const std::map<std::string, CopyStats>& groups,
                               const CopyStats& total) {
  std::string out = "{\n  \"groups\": [";
  bool first = true;
  for (const auto& [name, s] : groups) {
    out += first ? "\n" : ",\n";
    first = false;
    out += "    {\"group\": \"" + json_escape(name) + "\", ";
    detail::append_stats_json(out, s);
    out += "}";
  }
  out += "\n  ],\n  \"total\": {";
  detail::append_stats_json(out, total);
  out += "}\n}\n";
  return out;
}

inline std::string render_tsv(const std::map<std::string, CopyStats>& groups,
                              const CopyStats& total) {
  std::string out = "group\t";
  out += detail::kStatsTsvHeader;
  out += '\n';
  for (const auto& [name, s] : groups) {
    out += name;
    out += '\t';
    detail::append_stats_tsv(out, s);
    out += '\n';
  }
  out += "Total\t";
  detail::append_stats_tsv(out, total);
  out += '\n';
  return out;
}

inline std::string render_json(const std::vector<SweepRow>& rows) {
  std::string out = "{\n  \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"alpha\": " + fixed6(r.alpha);
    out += ", \"ratio\": " + fixed6(r.stats.ratio());
    const std::optional<double> cer = r.stats.cer();
    out += ", \"cer\": ";
    out += cer ? fixed6(*cer) : "null";
    out += ", \"bleu\": " + fixed6(r.bleu) + "}";
  }
  out += "\n  ]\n}\n";
  return out;
}

inline std::string render_tsv(const std::vector<SweepRow>& rows) {
  std::string out = "alpha\tratio\tcer\tbleu\n";
  for (const SweepRow& r : rows) {
    out += fixed6(r.alpha);
    out += '\t';
    out += fixed6(r.stats.ratio());
    const std::optional<double> cer = r.stats.cer();
    out += '\t';
    out += cer ? fixed6(*cer) : "-";
    out += '\t';
    out += fixed6(r.bleu);
    out += '\n';
  }
  return out;
}

// Per-sentence decode scores: the side table next to the translation file.
inline std::string render_scores_tsv(const std::vector<Hypothesis>& decoded) {
  std::string out = "sentence\traw_logprob\tpenalized_logprob\tcopy_count\tscore\n";
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    const Hypothesis& h = decoded[i];
    out += std::to_string(i);
    out += '\t';
    out += fixed6(h.raw_logprob);
    out += '\t';
    out += fixed6(h.penalized_logprob);
    out += '\t';
    out += std::to_string(h.copy_count);
    out += '\t';
    out += fixed6(h.score);
    out += '\n';
  }
  return out;
}

}  // namespace copyctl
