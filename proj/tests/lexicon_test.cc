// Apache License, Version 2.0, refer to LICENSE.txt

#include "copyctl/lexicon.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "testing.hpp"

using copyctl::LexiconModel;
using copyctl::parse_lexicon;
using copyctl::tokenize;
using testing_support::TempDir;

namespace {

TEST(Vocabulary, ReservedIdsDenseAndDistinct) {
  copyctl::Vocabulary vocab;
  EXPECT_EQ(vocab.size(), 3u);
  EXPECT_NE(vocab.bos(), vocab.eos());
  EXPECT_NE(vocab.eos(), vocab.unk());
  EXPECT_NE(vocab.bos(), vocab.unk());
  const auto a = vocab.add("alpha");
  const auto b = vocab.add("beta");
  EXPECT_EQ(a, 3u);
  EXPECT_EQ(b, 4u);
  EXPECT_EQ(vocab.add("alpha"), a);  // idempotent
  EXPECT_EQ(vocab.size(), 5u);
  EXPECT_EQ(vocab.surface(a), "alpha");
  EXPECT_EQ(*vocab.id_of("beta"), b);
  EXPECT_FALSE(vocab.id_of("gamma").has_value());
  EXPECT_TRUE(vocab.is_reserved(vocab.unk()));
  EXPECT_FALSE(vocab.is_reserved(a));
  EXPECT_FALSE(vocab.is_punct(a));
  EXPECT_TRUE(vocab.is_punct(vocab.add(".")));
}

TEST(ParseLexicon, BasicRow) {
  const LexiconModel model =
      parse_lexicon({"Hussein\tHussein:0.6, X:0.4"});
  const auto& vocab = model.vocab();
  ASSERT_TRUE(vocab.id_of("Hussein").has_value());
  ASSERT_TRUE(vocab.id_of("X").has_value());

  const auto lp = model.next_logprobs(tokenize("Hussein"), {});
  EXPECT_NEAR(lp[*vocab.id_of("Hussein")], std::log(0.6), 1e-12);
  EXPECT_NEAR(lp[*vocab.id_of("X")], std::log(0.4), 1e-12);
  EXPECT_EQ(lp[vocab.unk()], copyctl::kLogFloor);
}

TEST(ParseLexicon, ArrowSeparatorAndComments) {
  const LexiconModel model = parse_lexicon(
      {"# translation options", "", "Hussein \xE2\x86\x92 Hussein:0.6, X:0.4"});
  EXPECT_NE(model.row("Hussein"), nullptr);
}

TEST(ParseLexicon, BadDistribution) {
  EXPECT_THROW(parse_lexicon({"w\ta:0.6, b:0.5"}), copyctl::BadDistribution);
  EXPECT_THROW(parse_lexicon({"w\ta:1.5, b:-0.5"}), copyctl::BadDistribution);
  EXPECT_THROW(parse_lexicon({"w\ta:0.999"}), copyctl::BadDistribution);
  // Within the 1e-6 validation tolerance.
  EXPECT_NO_THROW(parse_lexicon({"w\ta:0.4999999, b:0.5000001"}));
}

TEST(ParseLexicon, DuplicateEntry) {
  EXPECT_THROW(parse_lexicon({"w\ta:1.0", "w\tb:1.0"}),
               copyctl::DuplicateEntry);
}

TEST(ParseLexicon, MalformedLines) {
  EXPECT_THROW(parse_lexicon({"no separator"}), copyctl::InputError);
  EXPECT_THROW(parse_lexicon({"w\ta"}), copyctl::InputError);
  EXPECT_THROW(parse_lexicon({"w\ta:notanumber"}), copyctl::InputError);
}

TEST(BuildLexicon, FromFile) {
  TempDir dir;
  const auto path = dir.file(
      "lex.tsv", "# toy lexicon\nHussein\tHussein:0.6, X:0.4\nwar\twar:1.0\n");
  const LexiconModel model = copyctl::build_lexicon(path);
  EXPECT_NE(model.row("Hussein"), nullptr);
  EXPECT_NE(model.row("war"), nullptr);
  EXPECT_EQ(model.row("absent"), nullptr);
}

TEST(NextLogprobs, EosAfterSourceLength) {
  const LexiconModel model = parse_lexicon({"a\tx:1.0"});
  const auto& vocab = model.vocab();
  const auto source = tokenize("a");
  const auto lp = model.next_logprobs(source, {*vocab.id_of("x")});
  EXPECT_EQ(lp[vocab.eos()], 0.0);
  for (copyctl::TokenId v = 0; v < vocab.size(); ++v) {
    if (v != vocab.eos()) {
      EXPECT_EQ(lp[v], copyctl::kLogFloor);
    }
  }
}

TEST(NextLogprobs, UnknownSourceWordFallsBackToUnk) {
  const LexiconModel model = parse_lexicon({"a\tx:1.0"});
  const auto& vocab = model.vocab();
  const auto lp = model.next_logprobs(tokenize("mystery"), {});
  EXPECT_EQ(lp[vocab.unk()], 0.0);
  EXPECT_EQ(lp[*vocab.id_of("x")], copyctl::kLogFloor);
}

TEST(NextLogprobs, PrefixTooLong) {
  const LexiconModel model = parse_lexicon({"a\tx:1.0"});
  const std::vector<copyctl::TokenId> prefix(2, 3);
  EXPECT_THROW(model.next_logprobs(tokenize("a"), prefix),
               copyctl::PrefixTooLong);
}

TEST(NextLogprobs, PositionMonotone) {
  const LexiconModel model =
      parse_lexicon({"a\tx:0.5, y:0.5", "b\tz:1.0"});
  const auto source = tokenize("a b");
  const auto& vocab = model.vocab();
  // Same prefix length, different content: identical distributions.
  const auto lp1 = model.next_logprobs(source, {*vocab.id_of("x")});
  const auto lp2 = model.next_logprobs(source, {*vocab.id_of("y")});
  EXPECT_EQ(lp1, lp2);
}

TEST(NextLogprobs, DistributionNormalized) {
  std::mt19937 rng(42);
  for (int iter = 0; iter < 50; ++iter) {
    const auto instance = testing_support::random_instance(rng);
    for (std::size_t t = 0; t <= instance.source.size(); ++t) {
      const std::vector<copyctl::TokenId> prefix(t, instance.model.vocab().unk());
      const auto lp = instance.model.next_logprobs(instance.source, prefix);
      double sum = 0.0;
      for (const double x : lp) sum += std::exp(x);
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

// The set of positive-probability complete outputs has one entry per
// combination of row options and their probabilities sum to 1.
TEST(Enumeration, OutputsFormADistribution) {
  std::mt19937 rng(43);
  for (int iter = 0; iter < 50; ++iter) {
    const auto instance = testing_support::random_instance(rng);
    const auto outputs =
        testing_support::enumerate_outputs(instance.model, instance.source);
    std::size_t expected = 1;
    for (const auto& token : instance.source.tokens) {
      const auto* row = instance.model.row(token.surface);
      expected *= row ? row->size() : 1;
    }
    EXPECT_EQ(outputs.size(), expected);
    double sum = 0.0;
    for (const auto& out : outputs) sum += std::exp(out.logprob);
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

// Full-sentence probability of ["Hussein", eos] under the toy row.
TEST(Enumeration, SingleStepProbability) {
  const LexiconModel model = parse_lexicon({"Hussein\tHussein:0.6, X:0.4"});
  const auto outputs =
      testing_support::enumerate_outputs(model, tokenize("Hussein"));
  ASSERT_EQ(outputs.size(), 2u);
  const auto hussein = *model.vocab().id_of("Hussein");
  for (const auto& out : outputs) {
    if (out.tokens == std::vector<copyctl::TokenId>{hussein}) {
      EXPECT_NEAR(std::exp(out.logprob), 0.6, 1e-12);
    } else {
      EXPECT_NEAR(std::exp(out.logprob), 0.4, 1e-12);
    }
  }
}

}  // namespace
