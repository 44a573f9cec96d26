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

#ifndef VERISCOPE_CORPUS_HPP_
#define VERISCOPE_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "veriscope/error.hpp"
#include "veriscope/faithfulness.hpp"

namespace veriscope {

struct CaptionEvent {
  double start = 0.0;  // seconds
  double end = 0.0;
  std::string caption;
};

struct VideoRecord {
  std::string video_id;
  double duration = 0.0;
  std::vector<CaptionEvent> events;
};

struct QAPair {
  std::string id;  // "question_id"/"id" when present, else "<video_id>#<n>"
  std::string video_id;
  std::string question;
  std::string answer;
};

enum class ValidationMode { kStrict, kLenient };

struct RecordIssue {
  std::string record;   // video id or row locator
  std::string message;
};

// Thrown by strict-mode loaders; carries every per-record defect found.
class DatasetError : public Error {
 public:
  DatasetError(std::string path, std::vector<RecordIssue> issues);
  const std::vector<RecordIssue>& issues() const { return issues_; }

 private:
  std::vector<RecordIssue> issues_;
};

struct CaptionsLoad {
  std::vector<VideoRecord> records;  // valid records only, file order
  std::vector<RecordIssue> issues;
  std::size_t total_records = 0;
};

struct QaLoad {
  std::vector<QAPair> pairs;
  std::vector<RecordIssue> issues;
  std::size_t total_rows = 0;
};

// ActivityNet Captions layout: {"<video_id>": {"duration": s,
// "timestamps": [[start, end]...], "sentences": [string...]}, ...}.
// Parse* collects defects; Load* throws DatasetError on any defect in strict
// mode and skips defective records in lenient mode. Unreadable or malformed
// JSON is kIo.
CaptionsLoad ParseCaptions(const std::filesystem::path& path);
CaptionsLoad ParseCaptionsJson(std::string_view json,
                               const std::string& origin = "<memory>");
std::vector<VideoRecord> LoadCaptions(const std::filesystem::path& path,
                                      ValidationMode mode);

// JSON list of {"video_id", "question", "answer"}.
QaLoad ParseQa(const std::filesystem::path& path);
QaLoad ParseQaJson(std::string_view json,
                   const std::string& origin = "<memory>");
std::vector<QAPair> LoadQa(const std::filesystem::path& path,
                           ValidationMode mode);

struct CaptionStats {
  std::size_t videos = 0;
  std::size_t events = 0;
  double mean_caption_words = 0.0;
  double mean_duration = 0.0;
};
CaptionStats SummarizeCaptions(std::span<const VideoRecord> records);

struct QaStats {
  std::size_t pairs = 0;
  std::size_t videos = 0;
};
QaStats SummarizeQa(std::span<const QAPair> pairs);

using Predictions = std::map<std::string, std::vector<std::string>>;

// {"<video_id>": [generated caption...], ...}
Predictions LoadPredictions(const std::filesystem::path& path);

struct PairingResult {
  std::vector<CaptionPair> pairs;  // record order, then event order
  std::size_t paired_events = 0;
  std::size_t total_events = 0;
};

// Pairs the i-th prediction of a video with its i-th event; ids are
// "<video_id>#<event_index>". Throws kUsage for unknown videos or more
// predictions than events.
PairingResult PairsFromRecords(std::span<const VideoRecord> records,
                               const Predictions& predictions);

struct SynthSpec {
  std::uint64_t seed = 42;
  std::size_t n_pairs = 100;
  double hallucination_rate = 0.5;
  std::vector<std::pair<std::string, std::string>> substitution_lexicon;
  std::vector<std::string> appendix_pool;

  void Validate() const;
};

struct LabeledPair {
  CaptionPair pair;
  bool label = false;  // true when the generated side was perturbed
};

// Bundled base sentences, lexicon and appendix pool. Base captions are
// three-token scenes; lexicon replacements and pool sentences are long
// enough that a perturbed caption falls well below a cosine of 0.5.
struct SynthFixture {
  std::vector<std::string> base_sentences;
  std::vector<std::pair<std::string, std::string>> substitution_lexicon;
  std::vector<std::string> appendix_pool;
};
const SynthFixture& DefaultSynthFixture();
SynthSpec DefaultSynthSpec(std::uint64_t seed, std::size_t n_pairs,
                           double hallucination_rate);

// Seeded corpus forge. The generator is std::mt19937_64 seeded with
// spec.seed; each pair consumes raw 64-bit draws in this order:
//   1. base sentence index       = draw % base_sentences.size()
//   2. perturbation gate         = (draw >> 11) * 2^-53 < hallucination_rate
//   3. (perturbed only) branch   = draw & 1: 0 substitute, 1 append
//   4. (perturbed only) offset   = draw % size of the chosen list
// Substitution scans the lexicon cyclically from the offset and replaces the
// first token matching an entry; append scans the pool cyclically. A
// candidate is accepted only if it changes the token multiset. When no
// lexicon entry applies, the append branch runs from the same offset.
// Throws kGeneration when no candidate changes the caption.
std::vector<LabeledPair> ForgeSynthetic(
    const SynthSpec& spec, std::span<const std::string> base_sentences);

// [{"generated", "id", "label", "reference"}...]
std::string RenderForgedCorpus(std::span<const LabeledPair> corpus);
std::vector<LabeledPair> ParseForgedCorpus(std::string_view json);
std::vector<LabeledPair> LoadForgedCorpus(const std::filesystem::path& path);

// SynthSpec as JSON: {"seed", "n_pairs", "hallucination_rate",
// "substitution_lexicon": [[token, replacement]...], "appendix_pool": [...],
// "base_sentences": [...]}. Missing fields take the bundled defaults.
struct SynthJob {
  SynthSpec spec;
  std::vector<std::string> base_sentences;
};
SynthJob LoadSynthJob(const std::filesystem::path& path);

}  // namespace veriscope

#endif  // VERISCOPE_CORPUS_HPP_
