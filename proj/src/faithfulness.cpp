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

#include "veriscope/faithfulness.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "veriscope/error.hpp"

namespace veriscope {
namespace {

void CheckThreshold(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    Fail(ErrorCode::kUsage, "threshold must be in [0, 1]");
  }
}

}  // namespace

std::size_t FaithfulnessReport::HallucinationCount() const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(),
                    [](const PairScore& p) { return p.hallucination; }));
}

bool Classify(double score, double threshold) {
  CheckThreshold(threshold);
  return score < threshold;
}

PairScore ScorePair(const CaptionPair& pair, const Embedder& embedder,
                    double threshold) {
  CheckThreshold(threshold);
  const std::string texts[] = {pair.generated, pair.reference};
  const auto vectors = embedder.EmbedBatch(texts);
  const double score = Cosine(vectors[0], vectors[1]);
  return PairScore{pair.id, score, Classify(score, threshold)};
}

PairScore ScorePair(const CaptionPair& pair, const EmbedderSpec& spec,
                    double threshold) {
  return ScorePair(pair, *MakeEmbedder(spec), threshold);
}

FaithfulnessReport ScoreCorpus(std::span<const CaptionPair> pairs,
                               const Embedder& embedder, double threshold) {
  CheckThreshold(threshold);
  if (pairs.empty()) {
    Fail(ErrorCode::kUsage, "cannot score an empty corpus");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& pair : pairs) {
    if (!seen.insert(pair.id).second) {
      Fail(ErrorCode::kUsage, "duplicate pair id: " + pair.id);
    }
  }

  // One batch for the whole corpus: generated texts first, then references.
  std::vector<std::string> texts;
  texts.reserve(2 * pairs.size());
  for (const auto& pair : pairs) texts.push_back(pair.generated);
  for (const auto& pair : pairs) texts.push_back(pair.reference);
  const auto vectors = embedder.EmbedBatch(texts);

  FaithfulnessReport report;
  report.threshold = threshold;
  report.pairs.reserve(pairs.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double score = Cosine(vectors[i], vectors[pairs.size() + i]);
    sum += score;
    report.pairs.push_back({pairs[i].id, score, score < threshold});
  }
  report.corpus_mean = sum / static_cast<double>(pairs.size());
  return report;
}

FaithfulnessReport ScoreCorpus(std::span<const CaptionPair> pairs,
                               const EmbedderSpec& spec, double threshold) {
  return ScoreCorpus(pairs, *MakeEmbedder(spec), threshold);
}

}  // namespace veriscope
