// Apache License, Version 2.0, refer to LICENSE.txt

#include "copyctl/corpus.hpp"

#include <gtest/gtest.h>

#include "testing.hpp"

using copyctl::Corpus;
using copyctl::load_parallel;
using testing_support::TempDir;

namespace {

TEST(LoadParallel, AlignedFiles) {
  TempDir dir;
  const auto src = dir.file("src.txt", "a b c\nd e\nf\n");
  const auto hyp = dir.file("hyp.txt", "x y\nz\nw v u\n");
  const Corpus corpus = load_parallel(src, hyp);
  ASSERT_EQ(corpus.size(), 3u);
  EXPECT_EQ(corpus.examples[0].source.size(), 3u);
  EXPECT_EQ(corpus.examples[2].hypothesis.size(), 3u);
  EXPECT_FALSE(corpus.examples[0].reference.has_value());
}

TEST(LoadParallel, LineCountMismatch) {
  TempDir dir;
  const auto src = dir.file("src.txt", "a\nb\nc\n");
  const auto hyp = dir.file("hyp.txt", "x\ny\n");
  EXPECT_THROW(load_parallel(src, hyp), copyctl::LineCountMismatch);
}

TEST(LoadParallel, ReferenceMismatchNamesFile) {
  TempDir dir;
  const auto src = dir.file("src.txt", "a\nb\n");
  const auto hyp = dir.file("hyp.txt", "x\ny\n");
  const auto ref = dir.file("ref.txt", "r\n");
  try {
    load_parallel(src, hyp, ref);
    FAIL() << "expected LineCountMismatch";
  } catch (const copyctl::LineCountMismatch& e) {
    EXPECT_EQ(e.path, ref);
  }
}

TEST(LoadParallel, PosTagsAttached) {
  TempDir dir;
  const auto src = dir.file("src.txt", "Hussein Tantawi attended\n");
  const auto hyp = dir.file("hyp.txt", "Hussein Tantawi .\n");
  const auto pos = dir.file("pos.txt", "PROPN PROPN PUNCT\n");
  const Corpus corpus =
      load_parallel(src, hyp, std::nullopt, std::nullopt, pos);
  ASSERT_TRUE(corpus.examples[0].pos_tags.has_value());
  EXPECT_EQ(*corpus.examples[0].pos_tags,
            (std::vector<std::string>{"PROPN", "PROPN", "PUNCT"}));
}

TEST(LoadParallel, PosLengthMismatch) {
  TempDir dir;
  const auto src = dir.file("src.txt", "a\nb c\n");
  const auto hyp = dir.file("hyp.txt", "x\ny z\n");
  const auto pos = dir.file("pos.txt", "DET\nNOUN\n");
  try {
    load_parallel(src, hyp, std::nullopt, std::nullopt, pos);
    FAIL() << "expected PosLengthMismatch";
  } catch (const copyctl::PosLengthMismatch& e) {
    EXPECT_EQ(e.line, 2u);
  }
}

TEST(LoadParallel, MetaParsing) {
  TempDir dir;
  const auto src = dir.file("src.txt", "a\nb\n");
  const auto hyp = dir.file("hyp.txt", "x\ny\n");
  const auto meta =
      dir.file("meta.txt", "origin=src-ori\tdomain=news\norigin=tgt-ori\n");
  const Corpus corpus = load_parallel(src, hyp, std::nullopt, meta);
  EXPECT_EQ(corpus.examples[0].meta.at("origin"), "src-ori");
  EXPECT_EQ(corpus.examples[0].meta.at("domain"), "news");
  EXPECT_EQ(corpus.examples[1].meta.at("origin"), "tgt-ori");
  EXPECT_EQ(corpus.examples[1].meta.count("domain"), 0u);
}

TEST(LoadParallel, BadMetaEntry) {
  TempDir dir;
  const auto src = dir.file("src.txt", "a\n");
  const auto hyp = dir.file("hyp.txt", "x\n");
  const auto meta = dir.file("meta.txt", "no-equals-sign\n");
  EXPECT_THROW(load_parallel(src, hyp, std::nullopt, meta),
               copyctl::InputError);
}

TEST(LoadParallel, EmptyLinesAreLegal) {
  TempDir dir;
  const auto src = dir.file("src.txt", "a\n\nb\n");
  const auto hyp = dir.file("hyp.txt", "\nx\n\n");
  const Corpus corpus = load_parallel(src, hyp);
  ASSERT_EQ(corpus.size(), 3u);
  EXPECT_TRUE(corpus.examples[0].hypothesis.empty());
  EXPECT_TRUE(corpus.examples[1].source.empty());
}

TEST(LoadParallel, CrlfAndMissingFinalNewline) {
  TempDir dir;
  const auto src = dir.file("src.txt", "a b\r\nc d\r\n");
  const auto hyp = dir.file("hyp.txt", "x\ny");  // no trailing newline
  const Corpus corpus = load_parallel(src, hyp);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus.examples[0].source.tokens[1].surface, "b");
  EXPECT_EQ(corpus.examples[1].hypothesis.tokens[0].surface, "y");
}

TEST(LoadParallel, MissingFile) {
  TempDir dir;
  const auto src = dir.file("src.txt", "a\n");
  EXPECT_THROW(load_parallel(src, dir.path("absent.txt")),
               copyctl::FileOpenError);
}

TEST(LoadParallel, SubwordMergeFlag) {
  TempDir dir;
  const auto src = dir.file("src.txt", "Feld@@ marschall war\n");
  const auto hyp = dir.file("hyp.txt", "x\n");
  const Corpus merged = load_parallel(src, hyp, std::nullopt, std::nullopt,
                                      std::nullopt, true);
  EXPECT_EQ(merged.examples[0].source.tokens[0].surface, "Feldmarschall");
  const Corpus plain = load_parallel(src, hyp);
  EXPECT_EQ(plain.examples[0].source.tokens[0].surface, "Feld@@");
}

}  // namespace
