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

#ifndef VERISCOPE_METRICS_REPORT_HPP_
#define VERISCOPE_METRICS_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "veriscope/corpus.hpp"
#include "veriscope/faithfulness.hpp"
#include "veriscope/rag_mitigation.hpp"

namespace veriscope {

struct AccuracyResult {
  std::size_t n = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;  // correct / n
};

struct AnswerPrediction {
  std::string id;
  std::string answer;
};

// Exact-match accuracy. With `normalize`, both sides are ASCII-lowercased and
// whitespace-trimmed before comparison. Every gold id must be predicted
// exactly once and no other ids may appear; otherwise kUsage.
AccuracyResult Accuracy(std::span<const AnswerPrediction> predictions,
                        std::span<const QAPair> gold, bool normalize = true);

// [{"id", "answer"}...]
std::vector<AnswerPrediction> LoadAnswerPredictions(
    const std::filesystem::path& path);

struct GoldLabel {
  std::string id;
  bool hallucination = false;
};

// Positive class is hallucination. 0/0 precision or recall is 1.0.
struct DetectorQuality {
  double threshold = kDefaultThreshold;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t true_negatives = 0;
  std::size_t false_negatives = 0;
  double precision = 1.0;
  double recall = 1.0;

  std::size_t total() const {
    return true_positives + false_positives + true_negatives +
           false_negatives;
  }
};

// Predicted positive is score < threshold. Ids must align one-to-one.
DetectorQuality MeasureDetector(std::span<const PairScore> scored,
                                std::span<const GoldLabel> labels,
                                double threshold);

std::vector<GoldLabel> LabelsOf(std::span<const LabeledPair> corpus);

// One mitigated caption as it appears in the mitigation report.
struct MitigationRecord {
  std::string id;
  RevisionOutcome outcome;
};

enum class ReportFormat { kJson, kCsv };

// Renderers are deterministic: sorted keys, 17 significant digits, '\n'
// line endings.
//
//   faithfulness JSON {"corpus_mean", "n", "pairs": [{"hallucination", "id",
//   "score"}], "threshold"}; CSV id,score,hallucination
//   accuracy CSV n,correct,accuracy
//   detector CSV threshold,tp,fp,tn,fn,precision,recall (one row each)
//   mitigation JSON [{"changed", "claims": [{"evidence_id", "grounded",
//   "index", "support", "text"}], "fallback", "grounded_fraction_after",
//   "grounded_fraction_before", "id", "iterations", "original", "revised"}]
//   mitigation CSV id,iterations,changed,grounded_fraction_before,
//   grounded_fraction_after,fallback
std::string RenderReport(const FaithfulnessReport& report, ReportFormat format);
std::string RenderReport(const AccuracyResult& result, ReportFormat format);
std::string RenderReport(std::span<const DetectorQuality> sweep,
                         ReportFormat format);
std::string RenderReport(std::span<const MitigationRecord> records,
                         ReportFormat format);

// Writes `content` to a sibling temp file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

template <typename Report>
void EmitReport(const Report& report, ReportFormat format,
                const std::filesystem::path& path) {
  WriteFileAtomic(path, RenderReport(report, format));
}

// "%.17g"; round-trips every finite double.
std::string FormatNumber(double value);

}  // namespace veriscope

#endif  // VERISCOPE_METRICS_REPORT_HPP_
