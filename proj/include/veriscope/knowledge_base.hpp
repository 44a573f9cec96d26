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

#ifndef VERISCOPE_KNOWLEDGE_BASE_HPP_
#define VERISCOPE_KNOWLEDGE_BASE_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veriscope/embedding.hpp"

namespace veriscope {

enum class EntrySource { kFrameFeature, kMetadata, kReferenceCaption };

const char* EntrySourceName(EntrySource source);  // "frame-feature", ...
std::optional<EntrySource> ParseEntrySource(std::string_view name);

struct KnowledgeEntry {
  std::string entry_id;
  Embedding vector;
  std::string text;  // empty only for frame features
  EntrySource source = EntrySource::kMetadata;
  std::optional<double> timestamp;  // seconds into the video

  bool has_text() const { return !text.empty(); }
};

// Input row for SessionKnowledgeBase::Build; ids are assigned on build.
struct FeatureInput {
  Embedding vector;
  std::string text;
  EntrySource source = EntrySource::kMetadata;
  std::optional<double> timestamp;
};

struct SearchHit {
  std::string entry_id;
  std::size_t index = 0;  // insertion position of the entry
  double score = 0.0;
  std::size_t rank = 1;   // 1-based, gap-free
};

// Per-video store of feature vectors and evidence text with exact cosine
// search. Immutable once built, so concurrent searches are safe.
class SessionKnowledgeBase {
 public:
  // Entry ids are "<video_id>/<index>". Throws kUsage on an empty feature
  // list, mixed dimensions, or empty text on a non-frame entry.
  static SessionKnowledgeBase Build(std::string video_id,
                                    std::vector<FeatureInput> features);

  // Embeds each text and stores it under `source`.
  static SessionKnowledgeBase FromTexts(std::string video_id,
                                        std::span<const std::string> texts,
                                        const Embedder& embedder,
                                        EntrySource source);

  const std::string& video_id() const { return video_id_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const KnowledgeEntry> entries() const { return entries_; }
  const KnowledgeEntry& entry(std::size_t index) const {
    return entries_.at(index);
  }
  std::size_t TextEntryCount() const;

  // Top-min(k, size) entries by cosine, descending; equal scores keep
  // insertion order. Throws kUsage on k == 0 or a dimension mismatch.
  std::vector<SearchHit> Search(const Embedding& query, std::size_t k) const;

  // Same ranking restricted to entries that carry text.
  std::vector<SearchHit> SearchTextEntries(const Embedding& query,
                                           std::size_t k) const;

  // {"video_id", "dim", "entries": [{"entry_id", "text", "source",
  // "timestamp", "vector"}]}; vectors round-trip bit-exactly.
  std::string ToSnapshotJson() const;
  static SessionKnowledgeBase FromSnapshotJson(std::string_view json);
  void SaveSnapshot(const std::filesystem::path& path) const;
  static SessionKnowledgeBase LoadSnapshot(const std::filesystem::path& path);

 private:
  SessionKnowledgeBase(std::string video_id, std::size_t dim,
                       std::vector<KnowledgeEntry> entries);

  template <typename Filter>
  std::vector<SearchHit> RankedSearch(const Embedding& query, std::size_t k,
                                      Filter filter) const;

  std::string video_id_;
  std::size_t dim_;
  std::vector<KnowledgeEntry> entries_;
};

}  // namespace veriscope

#endif  // VERISCOPE_KNOWLEDGE_BASE_HPP_
