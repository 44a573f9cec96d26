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

#include "veriscope/knowledge_base.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "json_format.hpp"
#include "veriscope/error.hpp"
#include "veriscope/metrics_report.hpp"

namespace veriscope {
namespace {

using internal::Json;

void CheckTimestamp(const std::optional<double>& timestamp) {
  if (timestamp && !(std::isfinite(*timestamp) && *timestamp >= 0.0)) {
    Fail(ErrorCode::kUsage, "entry timestamp must be finite and >= 0");
  }
}

[[noreturn]] void BadSnapshot(const std::string& what) {
  Fail(ErrorCode::kUsage, "knowledge base snapshot: " + what);
}

}  // namespace

const char* EntrySourceName(EntrySource source) {
  switch (source) {
    case EntrySource::kFrameFeature:
      return "frame-feature";
    case EntrySource::kMetadata:
      return "metadata";
    case EntrySource::kReferenceCaption:
      return "reference-caption";
  }
  return "metadata";
}

std::optional<EntrySource> ParseEntrySource(std::string_view name) {
  if (name == "frame-feature") return EntrySource::kFrameFeature;
  if (name == "metadata") return EntrySource::kMetadata;
  if (name == "reference-caption") return EntrySource::kReferenceCaption;
  return std::nullopt;
}

SessionKnowledgeBase::SessionKnowledgeBase(std::string video_id,
                                           std::size_t dim,
                                           std::vector<KnowledgeEntry> entries)
    : video_id_(std::move(video_id)), dim_(dim), entries_(std::move(entries)) {
  if (entries_.empty()) {
    Fail(ErrorCode::kUsage, "knowledge base needs at least one entry");
  }
  std::unordered_set<std::string_view> ids;
  for (const auto& entry : entries_) {
    if (entry.vector.dim() != dim_) {
      Fail(ErrorCode::kUsage,
           "knowledge base entry " + entry.entry_id + " has dim " +
               std::to_string(entry.vector.dim()) + ", expected " +
               std::to_string(dim_));
    }
    if (entry.text.empty() && entry.source != EntrySource::kFrameFeature) {
      Fail(ErrorCode::kUsage,
           "only frame-feature entries may have empty text: " +
               entry.entry_id);
    }
    CheckTimestamp(entry.timestamp);
    if (!ids.insert(entry.entry_id).second) {
      Fail(ErrorCode::kUsage, "duplicate entry id: " + entry.entry_id);
    }
  }
}

SessionKnowledgeBase SessionKnowledgeBase::Build(
    std::string video_id, std::vector<FeatureInput> features) {
  if (features.empty()) {
    Fail(ErrorCode::kUsage, "knowledge base needs at least one feature");
  }
  const std::size_t dim = features.front().vector.dim();
  std::vector<KnowledgeEntry> entries;
  entries.reserve(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    auto& feature = features[i];
    entries.push_back(KnowledgeEntry{video_id + "/" + std::to_string(i),
                                     std::move(feature.vector),
                                     std::move(feature.text), feature.source,
                                     feature.timestamp});
  }
  return SessionKnowledgeBase(std::move(video_id), dim, std::move(entries));
}

SessionKnowledgeBase SessionKnowledgeBase::FromTexts(
    std::string video_id, std::span<const std::string> texts,
    const Embedder& embedder, EntrySource source) {
  if (texts.empty()) {
    Fail(ErrorCode::kUsage, "knowledge base needs at least one text");
  }
  auto vectors = embedder.EmbedBatch(texts);
  std::vector<FeatureInput> features;
  features.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    features.push_back({std::move(vectors[i]), texts[i], source, std::nullopt});
  }
  return Build(std::move(video_id), std::move(features));
}

std::size_t SessionKnowledgeBase::TextEntryCount() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(),
                    [](const KnowledgeEntry& e) { return e.has_text(); }));
}

template <typename Filter>
std::vector<SearchHit> SessionKnowledgeBase::RankedSearch(
    const Embedding& query, std::size_t k, Filter filter) const {
  if (k == 0) Fail(ErrorCode::kUsage, "search k must be >= 1");
  if (query.dim() != dim_) {
    Fail(ErrorCode::kUsage, "query dim " + std::to_string(query.dim()) +
                                " does not match knowledge base dim " +
                                std::to_string(dim_));
  }
  struct Scored {
    double score;
    std::size_t index;
  };
  std::vector<Scored> scored;
  scored.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (filter(entries_[i])) {
      scored.push_back({Cosine(query, entries_[i].vector), i});
    }
  }
  const auto better = [](const Scored& a, const Scored& b) {
    return a.score != b.score ? a.score > b.score : a.index < b.index;
  };
  const std::size_t take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + take, scored.end(),
                    better);

  std::vector<SearchHit> hits;
  hits.reserve(take);
  for (std::size_t r = 0; r < take; ++r) {
    const auto& s = scored[r];
    hits.push_back({entries_[s.index].entry_id, s.index, s.score, r + 1});
  }
  return hits;
}

std::vector<SearchHit> SessionKnowledgeBase::Search(const Embedding& query,
                                                    std::size_t k) const {
  return RankedSearch(query, k, [](const KnowledgeEntry&) { return true; });
}

std::vector<SearchHit> SessionKnowledgeBase::SearchTextEntries(
    const Embedding& query, std::size_t k) const {
  return RankedSearch(query, k,
                      [](const KnowledgeEntry& e) { return e.has_text(); });
}

std::string SessionKnowledgeBase::ToSnapshotJson() const {
  Json entries = Json::array();
  for (const auto& entry : entries_) {
    Json vector = Json::array();
    for (double v : entry.vector.values()) vector.push_back(v);
    entries.push_back({{"entry_id", entry.entry_id},
                       {"text", entry.text},
                       {"source", EntrySourceName(entry.source)},
                       {"timestamp", entry.timestamp ? Json(*entry.timestamp)
                                                     : Json(nullptr)},
                       {"vector", std::move(vector)}});
  }
  const Json snapshot = {
      {"video_id", video_id_}, {"dim", dim_}, {"entries", std::move(entries)}};
  return internal::DumpCanonical(snapshot);
}

SessionKnowledgeBase SessionKnowledgeBase::FromSnapshotJson(
    std::string_view json) {
  const Json doc = internal::ParseJsonText(json, "knowledge base snapshot");
  try {
    if (!doc.is_object()) BadSnapshot("expected an object");
    const auto video_id = doc.at("video_id").get<std::string>();
    const auto dim = doc.at("dim").get<std::size_t>();
    std::vector<KnowledgeEntry> entries;
    for (const Json& row : doc.at("entries")) {
      const auto source_name = row.at("source").get<std::string>();
      const auto source = ParseEntrySource(source_name);
      if (!source) BadSnapshot("unknown source \"" + source_name + "\"");
      std::optional<double> timestamp;
      if (row.contains("timestamp") && !row["timestamp"].is_null()) {
        timestamp = row["timestamp"].get<double>();
      }
      entries.push_back(KnowledgeEntry{
          row.at("entry_id").get<std::string>(),
          Embedding(row.at("vector").get<std::vector<double>>()),
          row.value("text", std::string()), *source, timestamp});
    }
    return SessionKnowledgeBase(video_id, dim, std::move(entries));
  } catch (const Json::exception& e) {
    BadSnapshot(e.what());
  }
}

void SessionKnowledgeBase::SaveSnapshot(
    const std::filesystem::path& path) const {
  WriteFileAtomic(path, ToSnapshotJson());
}

SessionKnowledgeBase SessionKnowledgeBase::LoadSnapshot(
    const std::filesystem::path& path) {
  return FromSnapshotJson(internal::ReadFile(path));
}

}  // namespace veriscope
