// Apache License, Version 2.0, refer to LICENSE.txt

#include "copyctl/report.hpp"

#include <gtest/gtest.h>

namespace {

using copyctl::CopyStats;

TEST(Format, FixedSixDecimals) {
  EXPECT_EQ(copyctl::fixed6(2.0 / 3.0), "0.666667");
  EXPECT_EQ(copyctl::fixed6(0.5), "0.500000");
  EXPECT_EQ(copyctl::fixed6(100.0), "100.000000");
  EXPECT_EQ(copyctl::fixed6(0.0), "0.000000");
}

TEST(Format, PercentOneDecimal) {
  EXPECT_EQ(copyctl::percent1(0.108), "10.8%");
  EXPECT_EQ(copyctl::percent1(2.0 / 3.0), "66.7%");
  EXPECT_EQ(copyctl::percent1(0.0), "0.0%");
  EXPECT_EQ(copyctl::percent1(1.0), "100.0%");
}

TEST(Format, JsonEscape) {
  EXPECT_EQ(copyctl::json_escape("a\"b\\c\td"), "a\\\"b\\\\c\\td");
  EXPECT_EQ(copyctl::json_escape("plain"), "plain");
}

TEST(Render, UndefinedCerIsNullInJsonDashInTsv) {
  copyctl::AnalyzeReport report;
  report.sentences = 1;
  report.stats.copy_tokens = 0;
  report.stats.total_tokens = 4;
  report.stats.has_errors = false;
  const std::string json = copyctl::render_json(report);
  EXPECT_NE(json.find("\"cer\": null"), std::string::npos);
  EXPECT_NE(json.find("\"copy_errors\": null"), std::string::npos);
  EXPECT_EQ(json.find("\"bleu\""), std::string::npos);
  const std::string tsv = copyctl::render_tsv(report);
  EXPECT_NE(tsv.find("\t-\t"), std::string::npos);
}

TEST(Render, StandardBucketOrder) {
  copyctl::BucketedStats stats;
  for (const char* b : {"ADP", "NOUN", "NUM", "Others", "PROPN", "VERB"}) {
    stats.buckets[b] = CopyStats{};
  }
  const std::string tsv = copyctl::render_tsv(stats);
  const auto propn = tsv.find("\nPROPN\t");
  const auto adp = tsv.find("\nADP\t");
  const auto verb = tsv.find("\nVERB\t");
  const auto others = tsv.find("\nOthers\t");
  ASSERT_NE(propn, std::string::npos);
  EXPECT_LT(propn, adp);
  EXPECT_LT(adp, verb);
  EXPECT_LT(verb, others);
}

TEST(Render, SweepJsonMirrorsTsvNumbers) {
  std::vector<copyctl::SweepRow> rows(1);
  rows[0].alpha = 0.7;
  rows[0].stats.copy_tokens = 1;
  rows[0].stats.total_tokens = 3;
  rows[0].stats.copy_errors = 1;
  rows[0].bleu = 42.0;
  const std::string json = copyctl::render_json(rows);
  EXPECT_NE(json.find("\"alpha\": 0.700000"), std::string::npos);
  EXPECT_NE(json.find("\"ratio\": 0.333333"), std::string::npos);
  EXPECT_NE(json.find("\"cer\": 1.000000"), std::string::npos);
  EXPECT_NE(json.find("\"bleu\": 42.000000"), std::string::npos);
}

TEST(Render, SweepTsvShape) {
  std::vector<copyctl::SweepRow> rows(2);
  rows[0].alpha = 0.5;
  rows[0].stats.total_tokens = 4;
  rows[0].bleu = 12.5;
  rows[1].alpha = 1.0;
  rows[1].stats.copy_tokens = 2;
  rows[1].stats.total_tokens = 4;
  rows[1].stats.copy_errors = 1;
  rows[1].bleu = 50.0;
  const std::string tsv = copyctl::render_tsv(rows);
  EXPECT_EQ(tsv,
            "alpha\tratio\tcer\tbleu\n"
            "0.500000\t0.000000\t-\t12.500000\n"
            "1.000000\t0.500000\t0.500000\t50.000000\n");
}

}  // namespace
