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

#include "veriscope/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "json_format.hpp"
#include "veriscope/embedding.hpp"

namespace veriscope {
namespace {

using internal::Json;

std::string JoinIssues(const std::vector<RecordIssue>& issues) {
  std::string out;
  for (const auto& issue : issues) {
    out += "\n  " + issue.record + ": " + issue.message;
  }
  return out;
}

std::string_view TrimSpace(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::size_t CountWords(std::string_view s) {
  std::size_t words = 0;
  bool in_word = false;
  for (char c : s) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

// Validates one ActivityNet Captions entry; returns false on any defect.
bool ParseVideo(const std::string& video_id, const Json& value,
                VideoRecord& record, std::vector<RecordIssue>& issues) {
  const std::size_t before = issues.size();
  auto issue = [&](std::string message) {
    issues.push_back({video_id, std::move(message)});
  };
  if (!value.is_object()) {
    issue("record is not an object");
    return false;
  }
  record.video_id = video_id;
  const auto duration = value.find("duration");
  if (duration == value.end() || !duration->is_number() ||
      !std::isfinite(duration->get<double>()) ||
      duration->get<double>() < 0.0) {
    issue("non-numeric duration");
  } else {
    record.duration = duration->get<double>();
  }
  const auto timestamps = value.find("timestamps");
  const auto sentences = value.find("sentences");
  if (timestamps == value.end() || !timestamps->is_array()) {
    issue("missing timestamps array");
  }
  if (sentences == value.end() || !sentences->is_array()) {
    issue("missing sentences array");
  }
  if (issues.size() != before) return false;

  if (timestamps->size() != sentences->size()) {
    issue("arity mismatch: " + std::to_string(timestamps->size()) +
          " timestamps vs " + std::to_string(sentences->size()) +
          " sentences");
    return false;
  }
  if (timestamps->empty()) {
    issue("no events");
    return false;
  }
  for (std::size_t i = 0; i < timestamps->size(); ++i) {
    const Json& span = (*timestamps)[i];
    const Json& sentence = (*sentences)[i];
    const std::string where = "event " + std::to_string(i) + ": ";
    if (!span.is_array() || span.size() != 2 || !span[0].is_number() ||
        !span[1].is_number()) {
      issue(where + "timestamp is not a [start, end] pair");
      continue;
    }
    if (!sentence.is_string()) {
      issue(where + "sentence is not a string");
      continue;
    }
    const double start = span[0].get<double>();
    const double end = span[1].get<double>();
    if (!std::isfinite(start) || !std::isfinite(end)) {
      issue(where + "non-finite timestamp");
    } else if (start > end) {
      issue(where + "inverted interval");
    } else if (start == end) {
      issue(where + "empty interval");
    } else if (start < 0.0) {
      issue(where + "negative start");
    } else if (end > record.duration) {
      issue(where + "interval ends after the video");
    }
    record.events.push_back({start, end, sentence.get<std::string>()});
  }
  return issues.size() == before;
}

std::string IdString(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  return {};
}

std::vector<std::string> SortedTokens(std::string_view text) {
  auto tokens = TokenStrings(text);
  std::sort(tokens.begin(), tokens.end());
  return tokens;
}

double UnitInterval(std::uint64_t draw) {
  return static_cast<double>(draw >> 11) * 0x1.0p-53;
}

std::string PairId(std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "synth-%06zu", index);
  return buffer;
}

}  // namespace

DatasetError::DatasetError(std::string path, std::vector<RecordIssue> issues)
    : Error(ErrorCode::kValidation,
            path + ": " + std::to_string(issues.size()) +
                " validation error(s)" + JoinIssues(issues)),
      issues_(std::move(issues)) {}

CaptionsLoad ParseCaptionsJson(std::string_view json,
                               const std::string& origin) {
  const Json doc = internal::ParseJsonText(json, origin);
  if (!doc.is_object()) {
    Fail(ErrorCode::kValidation,
         origin + ": expected an object keyed by video id");
  }
  CaptionsLoad load;
  load.total_records = doc.size();
  for (const auto& [video_id, value] : doc.items()) {
    VideoRecord record;
    if (ParseVideo(video_id, value, record, load.issues)) {
      load.records.push_back(std::move(record));
    }
  }
  return load;
}

CaptionsLoad ParseCaptions(const std::filesystem::path& path) {
  return ParseCaptionsJson(internal::ReadFile(path), path.string());
}

std::vector<VideoRecord> LoadCaptions(const std::filesystem::path& path,
                                      ValidationMode mode) {
  CaptionsLoad load = ParseCaptions(path);
  if (mode == ValidationMode::kStrict && !load.issues.empty()) {
    throw DatasetError(path.string(), std::move(load.issues));
  }
  return std::move(load.records);
}

QaLoad ParseQaJson(std::string_view json, const std::string& origin) {
  const Json doc = internal::ParseJsonText(json, origin);
  if (!doc.is_array()) {
    Fail(ErrorCode::kValidation, origin + ": expected a list of QA rows");
  }
  QaLoad load;
  load.total_rows = doc.size();
  std::unordered_map<std::string, std::size_t> per_video;
  std::unordered_set<std::string> ids;
  for (std::size_t row_index = 0; row_index < doc.size(); ++row_index) {
    const Json& row = doc[row_index];
    const std::string locator = "row " + std::to_string(row_index);
    const std::size_t before = load.issues.size();
    auto issue = [&](std::string message) {
      load.issues.push_back({locator, std::move(message)});
    };
    if (!row.is_object()) {
      issue("row is not an object");
      continue;
    }
    auto text_field = [&](const char* key) -> std::string {
      const auto it = row.find(key);
      if (it == row.end() || !it->is_string()) {
        issue(std::string("missing ") + key);
        return {};
      }
      std::string value = it->get<std::string>();
      if (TrimSpace(value).empty()) issue(std::string("empty ") + key);
      return value;
    };
    QAPair pair;
    pair.video_id = row.contains("video_id") || !row.contains("video_name")
                        ? text_field("video_id")
                        : text_field("video_name");
    pair.question = text_field("question");
    pair.answer = text_field("answer");
    if (load.issues.size() != before) continue;

    const std::size_t ordinal = per_video[pair.video_id]++;
    if (row.contains("question_id")) {
      pair.id = IdString(row["question_id"]);
    } else if (row.contains("id")) {
      pair.id = IdString(row["id"]);
    } else {
      pair.id = pair.video_id + "#" + std::to_string(ordinal);
    }
    if (pair.id.empty()) {
      issue("id is neither a string nor an integer");
      continue;
    }
    if (!ids.insert(pair.id).second) {
      issue("duplicate id " + pair.id);
      continue;
    }
    load.pairs.push_back(std::move(pair));
  }
  return load;
}

QaLoad ParseQa(const std::filesystem::path& path) {
  return ParseQaJson(internal::ReadFile(path), path.string());
}

std::vector<QAPair> LoadQa(const std::filesystem::path& path,
                           ValidationMode mode) {
  QaLoad load = ParseQa(path);
  if (mode == ValidationMode::kStrict && !load.issues.empty()) {
    throw DatasetError(path.string(), std::move(load.issues));
  }
  return std::move(load.pairs);
}

CaptionStats SummarizeCaptions(std::span<const VideoRecord> records) {
  CaptionStats stats;
  stats.videos = records.size();
  std::size_t words = 0;
  double duration = 0.0;
  for (const auto& record : records) {
    duration += record.duration;
    stats.events += record.events.size();
    for (const auto& event : record.events) words += CountWords(event.caption);
  }
  if (stats.events > 0) {
    stats.mean_caption_words =
        static_cast<double>(words) / static_cast<double>(stats.events);
  }
  if (stats.videos > 0) {
    stats.mean_duration = duration / static_cast<double>(stats.videos);
  }
  return stats;
}

QaStats SummarizeQa(std::span<const QAPair> pairs) {
  std::unordered_set<std::string_view> videos;
  for (const auto& pair : pairs) videos.insert(pair.video_id);
  return {pairs.size(), videos.size()};
}

Predictions LoadPredictions(const std::filesystem::path& path) {
  const Json doc = internal::ParseJsonFile(path);
  if (!doc.is_object()) {
    Fail(ErrorCode::kUsage,
         path.string() + ": predictions must map video id to captions");
  }
  Predictions predictions;
  for (const auto& [video_id, value] : doc.items()) {
    auto& captions = predictions[video_id];
    if (value.is_string()) {
      captions.push_back(value.get<std::string>());
      continue;
    }
    if (!value.is_array()) {
      Fail(ErrorCode::kUsage, path.string() + ": predictions for " +
                                  video_id + " are not a list of strings");
    }
    for (const Json& caption : value) {
      if (!caption.is_string()) {
        Fail(ErrorCode::kUsage, path.string() + ": predictions for " +
                                    video_id + " are not a list of strings");
      }
      captions.push_back(caption.get<std::string>());
    }
  }
  return predictions;
}

PairingResult PairsFromRecords(std::span<const VideoRecord> records,
                               const Predictions& predictions) {
  std::unordered_map<std::string_view, const VideoRecord*> by_id;
  for (const auto& record : records) by_id.emplace(record.video_id, &record);
  for (const auto& [video_id, captions] : predictions) {
    const auto it = by_id.find(video_id);
    if (it == by_id.end()) {
      Fail(ErrorCode::kUsage, "prediction for unknown video " + video_id);
    }
    if (captions.size() > it->second->events.size()) {
      Fail(ErrorCode::kUsage,
           video_id + ": " + std::to_string(captions.size()) +
               " predictions for " +
               std::to_string(it->second->events.size()) + " events");
    }
  }
  PairingResult result;
  for (const auto& record : records) {
    result.total_events += record.events.size();
    const auto it = predictions.find(record.video_id);
    if (it == predictions.end()) continue;
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      result.pairs.push_back({record.video_id + "#" + std::to_string(i),
                              it->second[i], record.events[i].caption});
    }
  }
  result.paired_events = result.pairs.size();
  return result;
}

void SynthSpec::Validate() const {
  if (n_pairs == 0) Fail(ErrorCode::kUsage, "n_pairs must be >= 1");
  if (!(hallucination_rate >= 0.0 && hallucination_rate <= 1.0)) {
    Fail(ErrorCode::kUsage, "hallucination_rate must be in [0, 1]");
  }
  for (const auto& [token, replacement] : substitution_lexicon) {
    if (token == replacement) {
      Fail(ErrorCode::kUsage, "lexicon entry maps \"" + token + "\" to itself");
    }
    const auto tokens = TokenStrings(token);
    if (tokens.size() != 1 || tokens.front() != token) {
      Fail(ErrorCode::kUsage,
           "lexicon key must be a single lowercase token: \"" + token + "\"");
    }
  }
  if (hallucination_rate > 0.0 &&
      (substitution_lexicon.empty() || appendix_pool.empty())) {
    Fail(ErrorCode::kUsage,
         "lexicon and appendix pool are required when hallucination_rate > 0");
  }
}

std::vector<LabeledPair> ForgeSynthetic(
    const SynthSpec& spec, std::span<const std::string> base_sentences) {
  spec.Validate();
  if (base_sentences.empty()) {
    Fail(ErrorCode::kUsage, "forge needs at least one base sentence");
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<LabeledPair> corpus;
  corpus.reserve(spec.n_pairs);

  for (std::size_t i = 0; i < spec.n_pairs; ++i) {
    const std::string& reference = base_sentences[rng() % base_sentences.size()];
    LabeledPair item{{PairId(i), reference, reference}, false};
    if (!(UnitInterval(rng()) < spec.hallucination_rate)) {
      corpus.push_back(std::move(item));
      continue;
    }
    const bool substitute = (rng() & 1U) == 0;
    const std::uint64_t offset = rng();
    const auto original = SortedTokens(reference);
    std::optional<std::string> generated;

    if (substitute) {
      const auto tokens = Tokenize(reference);
      const auto& lexicon = spec.substitution_lexicon;
      for (std::size_t j = 0; j < lexicon.size() && !generated; ++j) {
        const auto& [token, replacement] =
            lexicon[(offset % lexicon.size() + j) % lexicon.size()];
        const auto match =
            std::find_if(tokens.begin(), tokens.end(),
                         [&](const Token& t) { return t.text == token; });
        if (match == tokens.end()) continue;
        std::string candidate = reference.substr(0, match->begin) +
                                replacement + reference.substr(match->end);
        if (SortedTokens(candidate) != original) generated = std::move(candidate);
      }
    }
    if (!generated) {
      const auto& pool = spec.appendix_pool;
      const std::string_view stem = TrimSpace(reference);
      for (std::size_t j = 0; j < pool.size() && !generated; ++j) {
        const auto& sentence = pool[(offset % pool.size() + j) % pool.size()];
        std::string candidate = stem.empty()
                                    ? sentence
                                    : std::string(stem) + " " + sentence;
        if (SortedTokens(candidate) != original) generated = std::move(candidate);
      }
    }
    if (!generated) {
      Fail(ErrorCode::kGeneration,
           "no perturbation changes base sentence \"" + reference + "\"");
    }
    item.pair.generated = std::move(*generated);
    item.label = true;
    corpus.push_back(std::move(item));
  }
  return corpus;
}

std::string RenderForgedCorpus(std::span<const LabeledPair> corpus) {
  Json rows = Json::array();
  for (const auto& item : corpus) {
    rows.push_back({{"id", item.pair.id},
                    {"generated", item.pair.generated},
                    {"reference", item.pair.reference},
                    {"label", item.label}});
  }
  return internal::DumpCanonical(rows);
}

std::vector<LabeledPair> ParseForgedCorpus(std::string_view json) {
  const Json doc = internal::ParseJsonText(json, "forged corpus");
  if (!doc.is_array()) Fail(ErrorCode::kUsage, "forged corpus must be a list");
  std::vector<LabeledPair> corpus;
  corpus.reserve(doc.size());
  try {
    for (const Json& row : doc) {
      corpus.push_back({{row.at("id").get<std::string>(),
                         row.at("generated").get<std::string>(),
                         row.at("reference").get<std::string>()},
                        row.value("label", false)});
    }
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kUsage, std::string("forged corpus: ") + e.what());
  }
  return corpus;
}

std::vector<LabeledPair> LoadForgedCorpus(const std::filesystem::path& path) {
  return ParseForgedCorpus(internal::ReadFile(path));
}

SynthSpec DefaultSynthSpec(std::uint64_t seed, std::size_t n_pairs,
                           double hallucination_rate) {
  const auto& fixture = DefaultSynthFixture();
  SynthSpec spec;
  spec.seed = seed;
  spec.n_pairs = n_pairs;
  spec.hallucination_rate = hallucination_rate;
  spec.substitution_lexicon = fixture.substitution_lexicon;
  spec.appendix_pool = fixture.appendix_pool;
  return spec;
}

SynthJob LoadSynthJob(const std::filesystem::path& path) {
  const Json doc = internal::ParseJsonFile(path);
  if (!doc.is_object()) {
    Fail(ErrorCode::kUsage, path.string() + ": synth spec must be an object");
  }
  const auto& fixture = DefaultSynthFixture();
  SynthJob job{DefaultSynthSpec(42, 100, 0.5), fixture.base_sentences};
  try {
    if (doc.contains("seed")) job.spec.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("n_pairs")) {
      job.spec.n_pairs = doc["n_pairs"].get<std::size_t>();
    }
    if (doc.contains("hallucination_rate")) {
      job.spec.hallucination_rate = doc["hallucination_rate"].get<double>();
    }
    if (doc.contains("substitution_lexicon")) {
      job.spec.substitution_lexicon.clear();
      for (const Json& entry : doc["substitution_lexicon"]) {
        job.spec.substitution_lexicon.emplace_back(
            entry.at(0).get<std::string>(), entry.at(1).get<std::string>());
      }
    }
    if (doc.contains("appendix_pool")) {
      job.spec.appendix_pool =
          doc["appendix_pool"].get<std::vector<std::string>>();
    }
    if (doc.contains("base_sentences")) {
      job.base_sentences = doc["base_sentences"].get<std::vector<std::string>>();
    }
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kUsage, path.string() + ": " + e.what());
  }
  job.spec.Validate();
  return job;
}

}  // namespace veriscope
