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

#ifndef VERISCOPE_FAITHFULNESS_HPP_
#define VERISCOPE_FAITHFULNESS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "veriscope/embedding.hpp"

namespace veriscope {

inline constexpr double kDefaultThreshold = 0.5;

// One generated caption and the reference it is judged against.
struct CaptionPair {
  std::string id;
  std::string generated;
  std::string reference;
};

struct PairScore {
  std::string id;
  double score = 0.0;  // raw cosine, not clamped to [0, 1]
  bool hallucination = false;
};

struct FaithfulnessReport {
  std::vector<PairScore> pairs;
  double corpus_mean = 0.0;
  double threshold = kDefaultThreshold;

  std::size_t n() const { return pairs.size(); }
  std::size_t HallucinationCount() const;
};

// True iff score < threshold; a score equal to the threshold is faithful.
// Throws kUsage unless threshold is in [0, 1].
bool Classify(double score, double threshold);

PairScore ScorePair(const CaptionPair& pair, const Embedder& embedder,
                    double threshold = kDefaultThreshold);
PairScore ScorePair(const CaptionPair& pair, const EmbedderSpec& spec,
                    double threshold = kDefaultThreshold);

// Mean pairwise cosine over the corpus; output preserves input order. Throws
// kUsage for an empty corpus or duplicate pair ids.
FaithfulnessReport ScoreCorpus(std::span<const CaptionPair> pairs,
                               const Embedder& embedder,
                               double threshold = kDefaultThreshold);
FaithfulnessReport ScoreCorpus(std::span<const CaptionPair> pairs,
                               const EmbedderSpec& spec,
                               double threshold = kDefaultThreshold);

}  // namespace veriscope

#endif  // VERISCOPE_FAITHFULNESS_HPP_
