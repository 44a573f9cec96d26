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

#include "veriscope/metrics_report.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>
#include <unordered_map>

#include "json_format.hpp"
#include "veriscope/error.hpp"

namespace veriscope {
namespace {

using internal::Json;

std::string Normalize(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

const char* Bool(bool value) { return value ? "true" : "false"; }

// 0/0 is defined as a perfect score.
double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

Json ClaimJson(const Claim& claim) {
  return {{"index", claim.index},
          {"text", claim.text},
          {"support", claim.support},
          {"grounded", claim.grounded},
          {"evidence_id", claim.best_evidence
                              ? Json(claim.best_evidence->entry_id)
                              : Json(nullptr)}};
}

}  // namespace

AccuracyResult Accuracy(std::span<const AnswerPrediction> predictions,
                        std::span<const QAPair> gold, bool normalize) {
  if (gold.empty()) Fail(ErrorCode::kUsage, "accuracy over an empty gold set");
  if (predictions.size() != gold.size()) {
    Fail(ErrorCode::kUsage, "accuracy: " + std::to_string(predictions.size()) +
                                " predictions for " +
                                std::to_string(gold.size()) + " gold rows");
  }
  std::unordered_map<std::string_view, const AnswerPrediction*> by_id;
  for (const auto& prediction : predictions) {
    if (!by_id.emplace(prediction.id, &prediction).second) {
      Fail(ErrorCode::kUsage, "duplicate prediction id " + prediction.id);
    }
  }
  AccuracyResult result;
  result.n = gold.size();
  for (const auto& row : gold) {
    const auto it = by_id.find(row.id);
    if (it == by_id.end()) {
      Fail(ErrorCode::kUsage, "no prediction for gold id " + row.id);
    }
    const bool match = normalize
                           ? Normalize(it->second->answer) == Normalize(row.answer)
                           : it->second->answer == row.answer;
    if (match) ++result.correct;
  }
  result.accuracy =
      static_cast<double>(result.correct) / static_cast<double>(result.n);
  return result;
}

std::vector<AnswerPrediction> LoadAnswerPredictions(
    const std::filesystem::path& path) {
  const Json doc = internal::ParseJsonFile(path);
  if (!doc.is_array()) {
    Fail(ErrorCode::kUsage, path.string() + ": expected a list of answers");
  }
  std::vector<AnswerPrediction> out;
  out.reserve(doc.size());
  try {
    for (const Json& row : doc) {
      const Json& id = row.at("id");
      out.push_back({id.is_string() ? id.get<std::string>() : id.dump(),
                     row.at("answer").get<std::string>()});
    }
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kUsage, path.string() + ": " + e.what());
  }
  return out;
}

DetectorQuality MeasureDetector(std::span<const PairScore> scored,
                                std::span<const GoldLabel> labels,
                                double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    Fail(ErrorCode::kUsage, "threshold must be in [0, 1]");
  }
  if (scored.size() != labels.size()) {
    Fail(ErrorCode::kUsage, "detector quality: " +
                                std::to_string(scored.size()) +
                                " scores for " + std::to_string(labels.size()) +
                                " labels");
  }
  std::unordered_map<std::string_view, bool> truth;
  for (const auto& label : labels) {
    if (!truth.emplace(label.id, label.hallucination).second) {
      Fail(ErrorCode::kUsage, "duplicate label id " + label.id);
    }
  }
  DetectorQuality quality;
  quality.threshold = threshold;
  for (const auto& score : scored) {
    const auto it = truth.find(score.id);
    if (it == truth.end()) {
      Fail(ErrorCode::kUsage, "no label for scored id " + score.id);
    }
    const bool predicted = score.score < threshold;
    if (it->second) {
      predicted ? ++quality.true_positives : ++quality.false_negatives;
    } else {
      predicted ? ++quality.false_positives : ++quality.true_negatives;
    }
  }
  quality.precision = Ratio(quality.true_positives,
                            quality.true_positives + quality.false_positives);
  quality.recall = Ratio(quality.true_positives,
                         quality.true_positives + quality.false_negatives);
  return quality;
}

std::vector<GoldLabel> LabelsOf(std::span<const LabeledPair> corpus) {
  std::vector<GoldLabel> labels;
  labels.reserve(corpus.size());
  for (const auto& item : corpus) labels.push_back({item.pair.id, item.label});
  return labels;
}

std::string RenderReport(const FaithfulnessReport& report,
                         ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out = "id,score,hallucination\n";
    for (const auto& pair : report.pairs) {
      out += CsvField(pair.id) + "," + FormatNumber(pair.score) + "," +
             Bool(pair.hallucination) + "\n";
    }
    return out;
  }
  Json pairs = Json::array();
  for (const auto& pair : report.pairs) {
    pairs.push_back({{"id", pair.id},
                     {"score", pair.score},
                     {"hallucination", pair.hallucination}});
  }
  return internal::DumpCanonical({{"threshold", report.threshold},
                                  {"n", report.n()},
                                  {"corpus_mean", report.corpus_mean},
                                  {"pairs", std::move(pairs)}});
}

std::string RenderReport(const AccuracyResult& result, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    return "n,correct,accuracy\n" + std::to_string(result.n) + "," +
           std::to_string(result.correct) + "," +
           FormatNumber(result.accuracy) + "\n";
  }
  return internal::DumpCanonical({{"n", result.n},
                                  {"correct", result.correct},
                                  {"accuracy", result.accuracy}});
}

std::string RenderReport(std::span<const DetectorQuality> sweep,
                         ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out = "threshold,tp,fp,tn,fn,precision,recall\n";
    for (const auto& q : sweep) {
      out += FormatNumber(q.threshold) + "," +
             std::to_string(q.true_positives) + "," +
             std::to_string(q.false_positives) + "," +
             std::to_string(q.true_negatives) + "," +
             std::to_string(q.false_negatives) + "," +
             FormatNumber(q.precision) + "," + FormatNumber(q.recall) + "\n";
    }
    return out;
  }
  Json rows = Json::array();
  for (const auto& q : sweep) {
    rows.push_back({{"threshold", q.threshold},
                    {"tp", q.true_positives},
                    {"fp", q.false_positives},
                    {"tn", q.true_negatives},
                    {"fn", q.false_negatives},
                    {"precision", q.precision},
                    {"recall", q.recall}});
  }
  return internal::DumpCanonical(rows);
}

std::string RenderReport(std::span<const MitigationRecord> records,
                         ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out =
        "id,iterations,changed,grounded_fraction_before,"
        "grounded_fraction_after,fallback\n";
    for (const auto& record : records) {
      const auto& o = record.outcome;
      out += CsvField(record.id) + "," + std::to_string(o.iterations) + "," +
             Bool(o.changed) + "," +
             FormatNumber(o.initial.grounded_fraction) + "," +
             FormatNumber(o.final.grounded_fraction) + "," + Bool(o.fallback) +
             "\n";
    }
    return out;
  }
  Json rows = Json::array();
  for (const auto& record : records) {
    const auto& o = record.outcome;
    Json claims = Json::array();
    for (const auto& claim : o.final.claims) claims.push_back(ClaimJson(claim));
    rows.push_back({{"id", record.id},
                    {"original", o.original},
                    {"revised", o.revised},
                    {"iterations", o.iterations},
                    {"changed", o.changed},
                    {"grounded_fraction_before", o.initial.grounded_fraction},
                    {"grounded_fraction_after", o.final.grounded_fraction},
                    {"fallback", o.fallback},
                    {"fallback_reason", o.fallback_reason},
                    {"claims", std::move(claims)}});
  }
  return internal::DumpCanonical(rows);
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorCode::kIo, "cannot write " + temp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) Fail(ErrorCode::kIo, "write failed: " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    Fail(ErrorCode::kIo, "cannot replace " + path.string());
  }
}

std::string FormatNumber(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace veriscope
