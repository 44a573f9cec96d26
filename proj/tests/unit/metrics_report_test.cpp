// Copyright 2026 The Veriscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "test_support.hpp"
#include "veriscope/corpus.hpp"
#include "veriscope/error.hpp"
#include "veriscope/faithfulness.hpp"
#include "veriscope/knowledge_base.hpp"
#include "veriscope/metrics_report.hpp"
#include "veriscope/rag_mitigation.hpp"

namespace veriscope {
namespace {

using nlohmann::json;
using testing::Fixture;
using testing::ScratchDir;
using testing::Slurp;

std::vector<QAPair> Gold() {
  return LoadQa(Fixture("qa_mini.json"), ValidationMode::kStrict);
}

std::size_t Lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

TEST(Accuracy, ThreeOfFiveIsExactlyPointSix) {
  const auto preds = LoadAnswerPredictions(Fixture("answers_mini.json"));
  const auto result = Accuracy(preds, Gold());
  EXPECT_EQ(result.n, 5u);
  EXPECT_EQ(result.correct, 3u);
  EXPECT_EQ(result.accuracy, 0.6);
  EXPECT_EQ(result.accuracy, 3.0 / 5.0);
}

TEST(Accuracy, NormalizationFoldsCaseAndWhitespace) {
  const std::vector<QAPair> gold{{"q", "v", "is it?", "yes"}};
  const std::vector<AnswerPrediction> preds{{"q", "Yes "}};
  EXPECT_EQ(Accuracy(preds, gold, true).correct, 1u);
  EXPECT_EQ(Accuracy(preds, gold, false).correct, 0u);
  const auto literal =
      Accuracy(LoadAnswerPredictions(Fixture("answers_mini.json")), Gold(),
               false);
  EXPECT_EQ(literal.correct, 1u);
  EXPECT_EQ(literal.accuracy, 0.2);
}

TEST(Accuracy, PerfectPredictionsScoreOne) {
  std::vector<AnswerPrediction> preds;
  for (const auto& row : Gold()) preds.push_back({row.id, row.answer});
  EXPECT_EQ(Accuracy(preds, Gold()).accuracy, 1.0);
}

TEST(Accuracy, IdMisalignmentIsUsageError) {
  const auto gold = Gold();
  auto preds = LoadAnswerPredictions(Fixture("answers_mini.json"));
  auto code_of = [&](const std::vector<AnswerPrediction>& p) {
    try {
      Accuracy(p, gold);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kGeneration;
  };
  auto renamed = preds;
  renamed[4].id = "q9";
  EXPECT_EQ(code_of(renamed), ErrorCode::kUsage);
  auto missing = preds;
  missing.pop_back();
  EXPECT_EQ(code_of(missing), ErrorCode::kUsage);
  auto duplicated = preds;
  duplicated[4].id = "q1";
  EXPECT_EQ(code_of(duplicated), ErrorCode::kUsage);
  EXPECT_THROW(Accuracy(preds, std::vector<QAPair>{}), Error);
}

TEST(Accuracy, OrderOfPredictionsDoesNotMatter) {
  auto preds = LoadAnswerPredictions(Fixture("answers_mini.json"));
  std::reverse(preds.begin(), preds.end());
  EXPECT_EQ(Accuracy(preds, Gold()).correct, 3u);
}

TEST(Accuracy, BoundsAndRationalIdentity) {
  std::vector<QAPair> gold;
  std::vector<AnswerPrediction> preds;
  for (std::size_t n = 1; n <= 60; ++n) {
    gold.push_back({"q" + std::to_string(n), "v", "q", "a"});
    preds.push_back({"q" + std::to_string(n), n % 3 ? "a" : "b"});
    const auto r = Accuracy(preds, gold);
    EXPECT_GE(r.accuracy, 0.0);
    EXPECT_LE(r.accuracy, 1.0);
    EXPECT_EQ(r.accuracy, static_cast<double>(r.correct) / r.n);
    EXPECT_EQ(std::llround(r.accuracy * r.n), static_cast<long long>(r.correct));
  }
}

std::vector<PairScore> Scores() {
  return {{"a", 0.9, false}, {"b", 0.1, true}, {"c", 0.45, true},
          {"d", 0.7, false}, {"e", 0.5, false}};
}

std::vector<GoldLabel> Labels() {
  return {{"a", false}, {"b", true}, {"c", false}, {"d", true}, {"e", false}};
}

TEST(MeasureDetector, CountsConfusionMatrix) {
  const auto q = MeasureDetector(Scores(), Labels(), 0.5);
  EXPECT_EQ(q.true_positives, 1u);   // b
  EXPECT_EQ(q.false_positives, 1u);  // c
  EXPECT_EQ(q.false_negatives, 1u);  // d
  EXPECT_EQ(q.true_negatives, 2u);   // a, e
  EXPECT_EQ(q.total(), 5u);
  EXPECT_EQ(q.precision, 0.5);
  EXPECT_EQ(q.recall, 0.5);
}

TEST(MeasureDetector, PerfectDetector) {
  const std::vector<PairScore> scores{{"a", 1.0, false}, {"b", 0.2, true}};
  const std::vector<GoldLabel> labels{{"a", false}, {"b", true}};
  const auto q = MeasureDetector(scores, labels, 0.5);
  EXPECT_EQ(q.false_positives, 0u);
  EXPECT_EQ(q.false_negatives, 0u);
  EXPECT_EQ(q.precision, 1.0);
  EXPECT_EQ(q.recall, 1.0);
}

TEST(MeasureDetector, ThresholdZeroPredictsNothing) {
  const auto q = MeasureDetector(Scores(), Labels(), 0.0);
  EXPECT_EQ(q.true_positives + q.false_positives, 0u);
  EXPECT_EQ(q.precision, 1.0);  // 0/0
  EXPECT_EQ(q.recall, 0.0);
  const std::vector<GoldLabel> clean{{"a", false}, {"b", false}, {"c", false},
                                     {"d", false}, {"e", false}};
  EXPECT_EQ(MeasureDetector(Scores(), clean, 0.0).recall, 1.0);  // 0/0
}

TEST(MeasureDetector, CountsAlwaysSumToCorpusSize) {
  for (int step = 0; step <= 10; ++step) {
    EXPECT_EQ(MeasureDetector(Scores(), Labels(), step / 10.0).total(), 5u);
  }
}

TEST(MeasureDetector, IdMisalignmentIsUsageError) {
  auto labels = Labels();
  labels[0].id = "zz";
  EXPECT_THROW(MeasureDetector(Scores(), labels, 0.5), Error);
  labels = Labels();
  labels.pop_back();
  EXPECT_THROW(MeasureDetector(Scores(), labels, 0.5), Error);
  EXPECT_THROW(MeasureDetector(Scores(), Labels(), 1.5), Error);
}

TEST(LabelsOf, CopiesIdsAndLabels) {
  const std::vector<LabeledPair> corpus{{{"x", "g", "r"}, true},
                                        {{"y", "g", "g"}, false}};
  const auto labels = LabelsOf(corpus);
  ASSERT_EQ(labels.size(), 2u);
  EXPECT_EQ(labels[0].id, "x");
  EXPECT_TRUE(labels[0].hallucination);
  EXPECT_FALSE(labels[1].hallucination);
}

FaithfulnessReport TwoPairReport() {
  FaithfulnessReport report;
  report.pairs = {{"p,1", 0.1, true}, {"p2", 1.0 / 3.0, true}};
  report.corpus_mean = (0.1 + 1.0 / 3.0) / 2.0;
  report.threshold = 0.5;
  return report;
}

TEST(RenderReport, FaithfulnessCsvHasHeaderPlusRows) {
  const auto csv = RenderReport(TwoPairReport(), ReportFormat::kCsv);
  EXPECT_EQ(Lines(csv), 3u);
  EXPECT_EQ(csv,
            "id,score,hallucination\n"
            "\"p,1\",0.10000000000000001,true\n"
            "p2,0.33333333333333331,true\n");
}

TEST(RenderReport, FaithfulnessJsonRoundTrips) {
  const auto report = TwoPairReport();
  const auto text = RenderReport(report, ReportFormat::kJson);
  const auto doc = json::parse(text);
  EXPECT_EQ(doc["n"], 2);
  EXPECT_EQ(doc["threshold"].get<double>(), 0.5);
  EXPECT_EQ(doc["corpus_mean"].get<double>(), report.corpus_mean);
  ASSERT_EQ(doc["pairs"].size(), 2u);
  EXPECT_EQ(doc["pairs"][1]["score"].get<double>(), 1.0 / 3.0);
  EXPECT_EQ(doc["pairs"][0]["id"], "p,1");
  EXPECT_EQ(doc["pairs"][0]["hallucination"], true);
  // Sorted keys, two-space indent, trailing newline.
  EXPECT_EQ(text.substr(0, 20), "{\n  \"corpus_mean\": 0");
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(RenderReport, AccuracyLayouts) {
  const AccuracyResult result{5, 3, 0.6};
  EXPECT_EQ(RenderReport(result, ReportFormat::kCsv),
            "n,correct,accuracy\n5,3,0.59999999999999998\n");
  const auto doc = json::parse(RenderReport(result, ReportFormat::kJson));
  EXPECT_EQ(doc["accuracy"].get<double>(), 0.6);
  EXPECT_EQ(doc["correct"], 3);
  EXPECT_EQ(doc["n"], 5);
}

TEST(RenderReport, DetectorSweepLayouts) {
  const std::vector<DetectorQuality> sweep{
      MeasureDetector(Scores(), Labels(), 0.3),
      MeasureDetector(Scores(), Labels(), 0.5)};
  const auto csv = RenderReport(sweep, ReportFormat::kCsv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "threshold,tp,fp,tn,fn,precision,recall");
  EXPECT_EQ(Lines(csv), 3u);
  const auto doc = json::parse(RenderReport(sweep, ReportFormat::kJson));
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[1]["tp"], 1);
  EXPECT_EQ(doc[1]["precision"].get<double>(), 0.5);
}

TEST(RenderReport, MitigationLayouts) {
  const HashEmbedder embedder;
  const std::vector<std::string> texts{"a man rides a wave"};
  const auto kb = SessionKnowledgeBase::FromTexts(
      "v", texts, embedder, EntrySource::kReferenceCaption);
  const std::vector<MitigationRecord> records{
      {"v#0", Mitigate("Penguins juggle torches.", kb, embedder,
                       StubReviser{})}};
  const auto doc = json::parse(RenderReport(records, ReportFormat::kJson));
  ASSERT_EQ(doc.size(), 1u);
  const auto& row = doc[0];
  EXPECT_EQ(row["id"], "v#0");
  EXPECT_EQ(row["original"], "Penguins juggle torches.");
  EXPECT_EQ(row["revised"], "a man rides a wave.");
  EXPECT_EQ(row["changed"], true);
  EXPECT_EQ(row["grounded_fraction_before"].get<double>(), 0.0);
  EXPECT_EQ(row["grounded_fraction_after"].get<double>(), 1.0);
  EXPECT_EQ(row["fallback"], false);
  ASSERT_EQ(row["claims"].size(), 1u);
  EXPECT_EQ(row["claims"][0]["evidence_id"], "v/0");
  EXPECT_EQ(row["claims"][0]["index"], 0);
  EXPECT_EQ(row["claims"][0]["grounded"], true);
  for (const char* key : {"iterations", "claims", "original", "revised"}) {
    EXPECT_TRUE(row.contains(key)) << key;
  }
  const auto csv = RenderReport(records, ReportFormat::kCsv);
  EXPECT_EQ(csv,
            "id,iterations,changed,grounded_fraction_before,"
            "grounded_fraction_after,fallback\n"
            "v#0,2,true,0,1,false\n");
}

TEST(EmitReport, IdenticalInputsGiveIdenticalBytes) {
  ScratchDir dir;
  const auto report = TwoPairReport();
  EmitReport(report, ReportFormat::kJson, dir / "a.json");
  EmitReport(report, ReportFormat::kJson, dir / "b.json");
  EXPECT_EQ(Slurp(dir / "a.json"), Slurp(dir / "b.json"));
  EXPECT_EQ(Slurp(dir / "a.json"), RenderReport(report, ReportFormat::kJson));
  EXPECT_FALSE(std::filesystem::exists(dir / "a.json.tmp"));
}

TEST(EmitReport, UnwritablePathIsIoError) {
  try {
    EmitReport(TwoPairReport(), ReportFormat::kCsv,
               "/nonexistent/dir/report.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(FormatNumber, SeventeenSignificantDigits) {
  EXPECT_EQ(FormatNumber(1.0), "1");
  EXPECT_EQ(FormatNumber(0.1), "0.10000000000000001");
  EXPECT_EQ(FormatNumber(-0.25), "-0.25");
  EXPECT_EQ(std::stod(FormatNumber(1.0 / 7.0)), 1.0 / 7.0);
}

}  // namespace
}  // namespace veriscope
