// Apache License, Version 2.0, refer to LICENSE.txt
//
// copyctl: copy-behavior analysis and copy-penalty decoding for
// line-aligned translation corpora.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "copyctl/copyctl.hpp"

namespace {

struct CommonFlags {
  bool lowercase = false;
  bool merge_subwords = false;
  bool keep_punct_denominator = false;
  std::string format = "json";
  std::string out_path;
};

struct DecodeFlags {
  double alpha = 1.0;
  double length_exp = 0.0;
  std::size_t beam = 5;
  std::size_t max_len = 128;
  bool oracle = false;
};

copyctl::CountingConfig counting_config(const CommonFlags& flags) {
  copyctl::CountingConfig cfg;
  cfg.lowercase = flags.lowercase;
  cfg.keep_punct_denominator = flags.keep_punct_denominator;
  return cfg;
}

copyctl::PenaltyConfig penalty_config(const DecodeFlags& flags) {
  copyctl::PenaltyConfig cfg;
  cfg.alpha = flags.alpha;
  cfg.length_exp = flags.length_exp;
  cfg.beam = flags.beam;
  cfg.max_len = flags.max_len;
  cfg.validate();
  return cfg;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags,
                      const std::string& default_format) {
  flags.format = default_format;
  cmd->add_flag("--lowercase", flags.lowercase,
                "Lowercase tokens before copy matching");
  cmd->add_flag("--merge-subwords", flags.merge_subwords,
                "Join @@ BPE continuations and \xE2\x96\x81 sentencepiece "
                "pieces into words");
  cmd->add_flag("--keep-punct-denominator", flags.keep_punct_denominator,
                "Count punctuation in the token total (never as copies)");
  cmd->add_option("--format", flags.format, "Report format")
      ->check(CLI::IsMember({"json", "tsv"}))
      ->capture_default_str();
  cmd->add_option("--out", flags.out_path,
                  "Write the report to this file instead of stdout");
}

void add_decode_flags(CLI::App* cmd, DecodeFlags& flags) {
  cmd->add_option("--alpha", flags.alpha,
                  "Copying penalty; <1 discourages copying, 1 disables")
      ->capture_default_str();
  cmd->add_option("--beam", flags.beam, "Beam width")->capture_default_str();
  cmd->add_option("--length-exp", flags.length_exp,
                  "Length penalty exponent")
      ->capture_default_str();
  cmd->add_option("--max-len", flags.max_len, "Maximum output length")
      ->capture_default_str();
  cmd->add_flag("--oracle", flags.oracle,
                "Exhaustive decoding instead of beam search");
}

void emit(const CommonFlags& flags, const std::string& content) {
  if (flags.out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(flags.out_path, std::ios::binary);
  if (!out) throw copyctl::FileOpenError(flags.out_path);
  out << content;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw copyctl::FileOpenError(path);
  out << content;
}

std::optional<std::string> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

// Tag map lines are `TAG BUCKET` or `TAG<TAB>BUCKET`; # comments allowed.
std::map<std::string, std::string> load_tagmap(const std::string& path) {
  std::map<std::string, std::string> map;
  for (const std::string& line : copyctl::read_lines(path)) {
    const copyctl::Sentence fields = copyctl::tokenize(line);
    if (fields.empty() || fields.tokens[0].surface[0] == '#') continue;
    if (fields.size() != 2) {
      throw copyctl::InputError("bad tagmap line: '" + line + "'");
    }
    map[fields.tokens[0].surface] = fields.tokens[1].surface;
  }
  return map;
}

std::vector<copyctl::Sentence> load_sentences(const std::string& path,
                                              bool merge_subwords) {
  std::vector<copyctl::Sentence> sentences;
  for (const std::string& line : copyctl::read_lines(path)) {
    sentences.push_back(copyctl::tokenize(line, merge_subwords));
  }
  return sentences;
}

int run_analyze(const std::string& src, const std::string& hyp,
                const std::string& ref, double threshold,
                const CommonFlags& flags) {
  const copyctl::Corpus corpus = copyctl::load_parallel(
      src, hyp, opt_path(ref), std::nullopt, std::nullopt,
      flags.merge_subwords);
  const copyctl::CountingConfig cfg = counting_config(flags);

  copyctl::AnalyzeReport report;
  report.sentences = corpus.size();
  report.stats = copyctl::copy_stats(corpus, cfg);
  report.overlap_threshold = threshold;
  report.high_overlap = copyctl::count_high_overlap(corpus, threshold, cfg);
  if (!ref.empty()) report.bleu = copyctl::corpus_bleu(corpus);

  emit(flags, flags.format == "json" ? copyctl::render_json(report)
                                     : copyctl::render_tsv(report));
  return 0;
}

int run_curve(const std::string& src, const std::string& ref,
              const std::vector<std::string>& hyps, const CommonFlags& flags) {
  const std::vector<copyctl::CurvePoint> curve = copyctl::learning_curve(
      src, ref, hyps, counting_config(flags), flags.merge_subwords);
  emit(flags, flags.format == "json" ? copyctl::render_json(curve)
                                     : copyctl::render_tsv(curve));
  return 0;
}

int run_pos(const std::string& src, const std::string& hyp,
            const std::string& ref, const std::string& pos,
            const std::string& tagmap_path, const CommonFlags& flags) {
  const copyctl::Corpus corpus =
      copyctl::load_parallel(src, hyp, ref, std::nullopt, pos,
                             flags.merge_subwords);
  const std::map<std::string, std::string> tagmap =
      tagmap_path.empty() ? copyctl::default_pos_buckets()
                          : load_tagmap(tagmap_path);
  const copyctl::BucketedStats stats =
      copyctl::bucket_by_pos(corpus, tagmap, counting_config(flags));
  emit(flags, flags.format == "json" ? copyctl::render_json(stats)
                                     : copyctl::render_tsv(stats));
  return 0;
}

int run_group(const std::string& src, const std::string& hyp,
              const std::string& ref, const std::string& meta,
              const std::string& key, const CommonFlags& flags) {
  const copyctl::Corpus corpus = copyctl::load_parallel(
      src, hyp, ref, meta, std::nullopt, flags.merge_subwords);
  const copyctl::CountingConfig cfg = counting_config(flags);
  const std::map<std::string, copyctl::CopyStats> groups =
      copyctl::group_by_key(corpus, key, cfg);
  const copyctl::CopyStats total = copyctl::copy_stats(corpus, cfg);
  emit(flags, flags.format == "json" ? copyctl::render_json(groups, total)
                                     : copyctl::render_tsv(groups, total));
  return 0;
}

int run_decode(const std::string& lexicon_path, const std::string& src,
               const std::string& scores_path, const CommonFlags& flags,
               const DecodeFlags& decode) {
  const copyctl::PenaltyConfig config = penalty_config(decode);
  const copyctl::LexiconModel model = copyctl::build_lexicon(lexicon_path);
  const std::vector<copyctl::Sentence> sources =
      load_sentences(src, flags.merge_subwords);

  const std::vector<copyctl::Hypothesis> decoded = copyctl::decode_corpus(
      model, sources, model.vocab(), config, decode.oracle);

  std::string translations;
  for (const copyctl::Hypothesis& h : decoded) {
    translations += copyctl::hypothesis_to_sentence(h, model.vocab()).joined();
    translations += '\n';
  }
  emit(flags, translations);
  if (!scores_path.empty()) {
    write_file(scores_path, copyctl::render_scores_tsv(decoded));
  }
  return 0;
}

int run_sweep(const std::string& lexicon_path, const std::string& src,
              const std::string& ref, const std::vector<double>& alphas,
              const CommonFlags& flags, const DecodeFlags& decode) {
  for (const double alpha : alphas) {
    if (!(alpha > 0.0)) {
      throw copyctl::InputError("sweep alphas must be positive");
    }
  }
  const copyctl::PenaltyConfig config = penalty_config(decode);
  const copyctl::LexiconModel model = copyctl::build_lexicon(lexicon_path);
  const std::vector<copyctl::Sentence> sources =
      load_sentences(src, flags.merge_subwords);
  const std::vector<copyctl::Sentence> references =
      load_sentences(ref, flags.merge_subwords);

  const std::vector<copyctl::SweepRow> rows = copyctl::penalty_sweep(
      model, sources, references, model.vocab(), config, alphas,
      decode.oracle, counting_config(flags));
  emit(flags, flags.format == "json" ? copyctl::render_json(rows)
                                     : copyctl::render_tsv(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "copyctl: quantify copying behavior in translation outputs and decode "
      "with a copying penalty"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "Copy ratio, copy error rate and high-overlap count");
  std::string a_src, a_hyp, a_ref;
  double a_threshold = 0.5;
  CommonFlags a_flags;
  analyze->add_option("src", a_src, "Source file")->required();
  analyze->add_option("hyp", a_hyp, "Hypothesis file")->required();
  analyze->add_option("ref", a_ref, "Reference file (enables CER and BLEU)");
  analyze->add_option("--threshold", a_threshold,
                      "Overlap threshold for the high-overlap count")
      ->capture_default_str();
  add_common_flags(analyze, a_flags, "json");

  // curve
  auto* curve = app.add_subcommand(
      "curve", "Ratio/CER per hypothesis file, e.g. per checkpoint");
  std::string c_src, c_ref;
  std::vector<std::string> c_hyps;
  CommonFlags c_flags;
  curve->add_option("src", c_src, "Source file")->required();
  curve->add_option("ref", c_ref, "Reference file")->required();
  curve->add_option("hyp", c_hyps, "Hypothesis files, in curve order")
      ->required();
  add_common_flags(curve, c_flags, "tsv");

  // pos
  auto* pos = app.add_subcommand(
      "pos", "Copy stats bucketed by part-of-speech tag");
  std::string p_src, p_hyp, p_ref, p_pos, p_tagmap;
  CommonFlags p_flags;
  pos->add_option("src", p_src, "Source file")->required();
  pos->add_option("hyp", p_hyp, "Hypothesis file")->required();
  pos->add_option("ref", p_ref, "Reference file")->required();
  pos->add_option("pos", p_pos, "POS tag file aligned to the hypothesis")
      ->required();
  pos->add_option("--tagmap", p_tagmap,
                  "TAG BUCKET mapping file; default buckets PROPN, ADP, NUM, "
                  "NOUN, Others");
  add_common_flags(pos, p_flags, "json");

  // group
  auto* group = app.add_subcommand(
      "group", "Copy stats partitioned by a metadata key");
  std::string g_src, g_hyp, g_ref, g_meta, g_key;
  CommonFlags g_flags;
  group->add_option("src", g_src, "Source file")->required();
  group->add_option("hyp", g_hyp, "Hypothesis file")->required();
  group->add_option("ref", g_ref, "Reference file")->required();
  group->add_option("meta", g_meta, "Metadata file (key=value, tab-separated)")
      ->required();
  group->add_option("--key", g_key, "Metadata key to group by")->required();
  add_common_flags(group, g_flags, "json");

  // decode
  auto* decode = app.add_subcommand(
      "decode", "Beam-search a source file through a lexicon model");
  std::string d_lexicon, d_src, d_scores;
  CommonFlags d_flags;
  DecodeFlags d_decode;
  decode->add_option("lexicon", d_lexicon, "Lexicon spec file")->required();
  decode->add_option("src", d_src, "Source file")->required();
  decode->add_option("--scores", d_scores,
                     "Also write a per-sentence score TSV to this file");
  add_decode_flags(decode, d_decode);
  add_common_flags(decode, d_flags, "tsv");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Decode once per alpha and tabulate ratio, CER and BLEU");
  std::string s_lexicon, s_src, s_ref;
  std::vector<double> s_alphas;
  CommonFlags s_flags;
  DecodeFlags s_decode;
  sweep->add_option("lexicon", s_lexicon, "Lexicon spec file")->required();
  sweep->add_option("src", s_src, "Source file")->required();
  sweep->add_option("ref", s_ref, "Reference file")->required();
  sweep->add_option("--alphas", s_alphas, "Comma-separated penalty values")
      ->required()
      ->delimiter(',');
  add_decode_flags(sweep, s_decode);
  add_common_flags(sweep, s_flags, "tsv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze->parsed()) {
      return run_analyze(a_src, a_hyp, a_ref, a_threshold, a_flags);
    }
    if (curve->parsed()) return run_curve(c_src, c_ref, c_hyps, c_flags);
    if (pos->parsed()) {
      return run_pos(p_src, p_hyp, p_ref, p_pos, p_tagmap, p_flags);
    }
    if (group->parsed()) {
      return run_group(g_src, g_hyp, g_ref, g_meta, g_key, g_flags);
    }
    if (decode->parsed()) {
      return run_decode(d_lexicon, d_src, d_scores, d_flags, d_decode);
    }
    if (sweep->parsed()) {
      return run_sweep(s_lexicon, s_src, s_ref, s_alphas, s_flags, s_decode);
    }
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const copyctl::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
