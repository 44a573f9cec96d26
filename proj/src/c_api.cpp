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

#include "veriscope/veriscope.h"

#include <chrono>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "veriscope/corpus.hpp"
#include "veriscope/embedding.hpp"
#include "veriscope/error.hpp"
#include "veriscope/faithfulness.hpp"
#include "veriscope/knowledge_base.hpp"
#include "veriscope/metrics_report.hpp"
#include "veriscope/rag_mitigation.hpp"
#include "veriscope/service_clients.hpp"

namespace vs = veriscope;

struct vs_embedder {
  std::unique_ptr<vs::Embedder> impl;
  const vs::EmbeddingClient* remote = nullptr;
};

struct vs_captions {
  vs::CaptionsLoad load;
  std::vector<std::string> issues;
};

struct vs_pairs {
  std::vector<vs::CaptionPair> pairs;
  std::vector<int> labels;
  std::vector<std::string> video_ids;
  std::size_t paired_events = 0;
  std::size_t total_events = 0;
};

struct vs_faith_report {
  vs::FaithfulnessReport report;
};

struct vs_qa {
  vs::QaLoad load;
  std::vector<std::string> issues;
  std::size_t videos = 0;
};

struct vs_kb {
  vs::SessionKnowledgeBase kb;
};

struct vs_claims {
  std::vector<std::string> texts;
};

struct vs_reviser {
  std::unique_ptr<vs::Reviser> impl;
  const vs::LlmReviser* llm = nullptr;
};

struct vs_mitigation {
  vs::MitigationRecord record;
};

namespace {

thread_local std::string g_last_error;

vs_status StatusOf(vs::ErrorCode code) {
  switch (code) {
    case vs::ErrorCode::kUsage:
      return VS_ERR_USAGE;
    case vs::ErrorCode::kIo:
      return VS_ERR_IO;
    case vs::ErrorCode::kProviderUnavailable:
      return VS_ERR_PROVIDER_UNAVAILABLE;
    case vs::ErrorCode::kContractViolation:
      return VS_ERR_CONTRACT_VIOLATION;
    case vs::ErrorCode::kValidation:
      return VS_ERR_VALIDATION;
    case vs::ErrorCode::kVerificationImpossible:
      return VS_ERR_VERIFICATION_IMPOSSIBLE;
    case vs::ErrorCode::kGeneration:
      return VS_ERR_GENERATION;
  }
  return VS_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and vs_last_error().
template <typename Body>
vs_status Guard(Body&& body) {
  try {
    g_last_error.clear();
    body();
    return VS_OK;
  } catch (const vs::Error& e) {
    g_last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return VS_ERR_INTERNAL;
  } catch (const std::out_of_range& e) {
    g_last_error = std::string("index out of range: ") + e.what();
    return VS_ERR_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return VS_ERR_INTERNAL;
  }
}

void Require(bool condition, const char* what) {
  if (!condition) vs::Fail(vs::ErrorCode::kUsage, what);
}

std::string Str(const char* s) { return s ? std::string(s) : std::string(); }

vs::ProviderConfig ToProvider(const vs_provider_config* config) {
  Require(config != nullptr, "provider config is NULL");
  Require(config->endpoint != nullptr, "provider endpoint is NULL");
  vs::ProviderConfig out;
  out.endpoint = config->endpoint;
  out.timeout = std::chrono::milliseconds(config->timeout_ms);
  out.max_retries = config->max_retries;
  out.backoff_base = std::chrono::milliseconds(config->backoff_base_ms);
  if (config->bearer_token) out.bearer_token = config->bearer_token;
  out.Validate();
  return out;
}

vs_client_metrics ToMetrics(const vs::ClientMetricsSnapshot& m) {
  return {m.calls, m.attempts, m.retries, m.failures};
}

vs::ReportFormat ToFormat(vs_format format) {
  switch (format) {
    case VS_FORMAT_JSON:
      return vs::ReportFormat::kJson;
    case VS_FORMAT_CSV:
      return vs::ReportFormat::kCsv;
  }
  vs::Fail(vs::ErrorCode::kUsage, "unknown report format");
}

vs::EntrySource ToSource(vs_source source) {
  switch (source) {
    case VS_SOURCE_FRAME_FEATURE:
      return vs::EntrySource::kFrameFeature;
    case VS_SOURCE_METADATA:
      return vs::EntrySource::kMetadata;
    case VS_SOURCE_REFERENCE_CAPTION:
      return vs::EntrySource::kReferenceCaption;
  }
  vs::Fail(vs::ErrorCode::kUsage, "unknown entry source");
}

vs::DetectorQuality FromQuality(const vs_detector_quality& q) {
  return {q.threshold,       q.true_positives,  q.false_positives,
          q.true_negatives,  q.false_negatives, q.precision,
          q.recall};
}

std::vector<std::string> IssueLines(const std::vector<vs::RecordIssue>& in) {
  std::vector<std::string> out;
  out.reserve(in.size());
  for (const auto& issue : in) out.push_back(issue.record + ": " + issue.message);
  return out;
}

template <typename Handle>
Handle* Adopt(std::unique_ptr<Handle> handle, Handle** out) {
  *out = handle.release();
  return *out;
}

}  // namespace

extern "C" {

const char* vs_version(void) { return "0.1.0"; }

const char* vs_last_error(void) { return g_last_error.c_str(); }

const char* vs_status_name(vs_status status) {
  switch (status) {
    case VS_OK:
      return "ok";
    case VS_ERR_USAGE:
      return "usage";
    case VS_ERR_IO:
      return "io";
    case VS_ERR_PROVIDER_UNAVAILABLE:
      return "provider-unavailable";
    case VS_ERR_CONTRACT_VIOLATION:
      return "contract-violation";
    case VS_ERR_VALIDATION:
      return "validation";
    case VS_ERR_VERIFICATION_IMPOSSIBLE:
      return "verification-impossible";
    case VS_ERR_GENERATION:
      return "generation";
    case VS_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

void vs_provider_config_init(vs_provider_config* config) {
  if (!config) return;
  const vs::ProviderConfig defaults;
  config->endpoint = nullptr;
  config->timeout_ms = defaults.timeout.count();
  config->max_retries = defaults.max_retries;
  config->backoff_base_ms = defaults.backoff_base.count();
  config->bearer_token = nullptr;
}

/* ---- embedding ---- */

vs_status vs_embedder_create_hash(size_t dim, vs_embedder** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    auto handle = std::make_unique<vs_embedder>();
    handle->impl = std::make_unique<vs::HashEmbedder>(dim);
    Adopt(std::move(handle), out);
  });
}

vs_status vs_embedder_create_remote(const vs_provider_config* config,
                                    size_t dim, vs_embedder** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    Require(dim > 0, "embedder dim must be >= 1");
    auto handle = std::make_unique<vs_embedder>();
    auto client = std::make_unique<vs::EmbeddingClient>(ToProvider(config), dim);
    handle->remote = client.get();
    handle->impl = std::move(client);
    Adopt(std::move(handle), out);
  });
}

void vs_embedder_destroy(vs_embedder* embedder) { delete embedder; }

size_t vs_embedder_dim(const vs_embedder* embedder) {
  return embedder ? embedder->impl->dim() : 0;
}

vs_client_metrics vs_embedder_metrics(const vs_embedder* embedder) {
  if (!embedder || !embedder->remote) return {};
  return ToMetrics(embedder->remote->metrics());
}

vs_status vs_embed_text(const vs_embedder* embedder, const char* text,
                        double* out, size_t out_len) {
  return Guard([&] {
    Require(embedder && text && out, "NULL argument");
    Require(out_len == embedder->impl->dim(),
            "output length must equal the embedder dim");
    const auto embedding = embedder->impl->Embed(text);
    Require(embedding.dim() == out_len, "embedding dim mismatch");
    for (std::size_t i = 0; i < out_len; ++i) out[i] = embedding[i];
  });
}

vs_status vs_cosine(const double* a, const double* b, size_t dim,
                    double* out) {
  return Guard([&] {
    Require(a && b && out, "NULL argument");
    Require(dim > 0, "dim must be >= 1");
    *out = vs::Cosine(vs::Embedding(std::vector<double>(a, a + dim)),
                      vs::Embedding(std::vector<double>(b, b + dim)));
  });
}

int vs_classify(double score, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) return -1;
  return vs::Classify(score, threshold) ? 1 : 0;
}

/* ---- captions ---- */

vs_status vs_captions_load(const char* path, int strict, vs_captions** out) {
  return Guard([&] {
    Require(path && out, "NULL argument");
    auto handle = std::make_unique<vs_captions>();
    handle->load = vs::ParseCaptions(path);
    if (strict && !handle->load.issues.empty()) {
      throw vs::DatasetError(path, handle->load.issues);
    }
    handle->issues = IssueLines(handle->load.issues);
    Adopt(std::move(handle), out);
  });
}

void vs_captions_destroy(vs_captions* captions) { delete captions; }

size_t vs_captions_total_records(const vs_captions* captions) {
  return captions ? captions->load.total_records : 0;
}

size_t vs_captions_video_count(const vs_captions* captions) {
  return captions ? captions->load.records.size() : 0;
}

const char* vs_captions_video_id(const vs_captions* captions, size_t video) {
  if (!captions || video >= captions->load.records.size()) return nullptr;
  return captions->load.records[video].video_id.c_str();
}

double vs_captions_duration(const vs_captions* captions, size_t video) {
  if (!captions || video >= captions->load.records.size()) return 0.0;
  return captions->load.records[video].duration;
}

size_t vs_captions_event_count(const vs_captions* captions, size_t video) {
  if (!captions || video >= captions->load.records.size()) return 0;
  return captions->load.records[video].events.size();
}

const char* vs_captions_event_text(const vs_captions* captions, size_t video,
                                   size_t event) {
  if (!captions || video >= captions->load.records.size()) return nullptr;
  const auto& events = captions->load.records[video].events;
  return event < events.size() ? events[event].caption.c_str() : nullptr;
}

size_t vs_captions_issue_count(const vs_captions* captions) {
  return captions ? captions->issues.size() : 0;
}

const char* vs_captions_issue(const vs_captions* captions, size_t i) {
  if (!captions || i >= captions->issues.size()) return nullptr;
  return captions->issues[i].c_str();
}

vs_caption_stats vs_captions_stats(const vs_captions* captions) {
  if (!captions) return {};
  const auto stats = vs::SummarizeCaptions(captions->load.records);
  return {stats.videos, stats.events, stats.mean_caption_words,
          stats.mean_duration};
}

/* ---- pairs ---- */

vs_status vs_pairs_create(vs_pairs** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    Adopt(std::make_unique<vs_pairs>(), out);
  });
}

vs_status vs_pairs_add(vs_pairs* pairs, const char* id, const char* generated,
                       const char* reference) {
  return Guard([&] {
    Require(pairs && id && generated && reference, "NULL argument");
    pairs->pairs.push_back({id, generated, reference});
    pairs->labels.push_back(-1);
    pairs->video_ids.emplace_back(id);
  });
}

void vs_pairs_destroy(vs_pairs* pairs) { delete pairs; }

size_t vs_pairs_count(const vs_pairs* pairs) {
  return pairs ? pairs->pairs.size() : 0;
}

const char* vs_pairs_id(const vs_pairs* pairs, size_t i) {
  if (!pairs || i >= pairs->pairs.size()) return nullptr;
  return pairs->pairs[i].id.c_str();
}

const char* vs_pairs_generated(const vs_pairs* pairs, size_t i) {
  if (!pairs || i >= pairs->pairs.size()) return nullptr;
  return pairs->pairs[i].generated.c_str();
}

const char* vs_pairs_reference(const vs_pairs* pairs, size_t i) {
  if (!pairs || i >= pairs->pairs.size()) return nullptr;
  return pairs->pairs[i].reference.c_str();
}

int vs_pairs_label(const vs_pairs* pairs, size_t i) {
  if (!pairs || i >= pairs->labels.size()) return -1;
  return pairs->labels[i];
}

const char* vs_pairs_video_id(const vs_pairs* pairs, size_t i) {
  if (!pairs || i >= pairs->video_ids.size()) return nullptr;
  return pairs->video_ids[i].c_str();
}

vs_status vs_pairs_from_predictions(const vs_captions* captions,
                                    const char* predictions_path,
                                    vs_pairs** out) {
  return Guard([&] {
    Require(captions && predictions_path && out, "NULL argument");
    const auto predictions = vs::LoadPredictions(predictions_path);
    auto paired = vs::PairsFromRecords(captions->load.records, predictions);
    auto handle = std::make_unique<vs_pairs>();
    for (auto& pair : paired.pairs) {
      handle->video_ids.push_back(pair.id.substr(0, pair.id.rfind('#')));
      handle->labels.push_back(-1);
      handle->pairs.push_back(std::move(pair));
    }
    handle->paired_events = paired.paired_events;
    handle->total_events = paired.total_events;
    Adopt(std::move(handle), out);
  });
}

void vs_pairs_coverage(const vs_pairs* pairs, size_t* paired_events,
                       size_t* total_events) {
  if (!pairs) return;
  if (paired_events) *paired_events = pairs->paired_events;
  if (total_events) *total_events = pairs->total_events;
}

namespace {

std::unique_ptr<vs_pairs> FromLabeled(std::vector<vs::LabeledPair> corpus) {
  auto handle = std::make_unique<vs_pairs>();
  for (auto& item : corpus) {
    handle->video_ids.push_back(item.pair.id);
    handle->labels.push_back(item.label ? 1 : 0);
    handle->pairs.push_back(std::move(item.pair));
  }
  handle->paired_events = handle->total_events = handle->pairs.size();
  return handle;
}

}  // namespace

vs_status vs_pairs_load_forged(const char* path, vs_pairs** out) {
  return Guard([&] {
    Require(path && out, "NULL argument");
    Adopt(FromLabeled(vs::LoadForgedCorpus(path)), out);
  });
}

vs_status vs_pairs_write_forged(const vs_pairs* pairs, const char* path) {
  return Guard([&] {
    Require(pairs && path, "NULL argument");
    std::vector<vs::LabeledPair> corpus;
    corpus.reserve(pairs->pairs.size());
    for (std::size_t i = 0; i < pairs->pairs.size(); ++i) {
      corpus.push_back({pairs->pairs[i], pairs->labels[i] == 1});
    }
    vs::WriteFileAtomic(path, vs::RenderForgedCorpus(corpus));
  });
}

void vs_synth_params_init(vs_synth_params* params) {
  if (!params) return;
  params->seed = 42;
  params->n_pairs = 100;
  params->hallucination_rate = 0.5;
  params->spec_path = nullptr;
}

vs_status vs_forge(const vs_synth_params* params, vs_pairs** out) {
  return Guard([&] {
    Require(params && out, "NULL argument");
    vs::SynthJob job{vs::DefaultSynthSpec(params->seed, params->n_pairs,
                                          params->hallucination_rate),
                     vs::DefaultSynthFixture().base_sentences};
    if (params->spec_path) job = vs::LoadSynthJob(params->spec_path);
    Adopt(FromLabeled(vs::ForgeSynthetic(job.spec, job.base_sentences)), out);
  });
}

/* ---- faithfulness ---- */

vs_status vs_score_corpus(const vs_embedder* embedder, const vs_pairs* pairs,
                          double threshold, vs_faith_report** out) {
  return Guard([&] {
    Require(embedder && pairs && out, "NULL argument");
    auto handle = std::make_unique<vs_faith_report>();
    handle->report = vs::ScoreCorpus(pairs->pairs, *embedder->impl, threshold);
    Adopt(std::move(handle), out);
  });
}

void vs_faith_report_destroy(vs_faith_report* report) { delete report; }

size_t vs_faith_report_count(const vs_faith_report* report) {
  return report ? report->report.n() : 0;
}

double vs_faith_report_mean(const vs_faith_report* report) {
  return report ? report->report.corpus_mean : 0.0;
}

double vs_faith_report_threshold(const vs_faith_report* report) {
  return report ? report->report.threshold : 0.0;
}

size_t vs_faith_report_hallucinations(const vs_faith_report* report) {
  return report ? report->report.HallucinationCount() : 0;
}

vs_status vs_faith_report_pair(const vs_faith_report* report, size_t i,
                               const char** id, double* score,
                               int* hallucination) {
  return Guard([&] {
    Require(report != nullptr, "report is NULL");
    const auto& pair = report->report.pairs.at(i);
    if (id) *id = pair.id.c_str();
    if (score) *score = pair.score;
    if (hallucination) *hallucination = pair.hallucination ? 1 : 0;
  });
}

vs_status vs_faith_report_write(const vs_faith_report* report,
                                vs_format format, const char* path) {
  return Guard([&] {
    Require(report && path, "NULL argument");
    vs::EmitReport(report->report, ToFormat(format), path);
  });
}

/* ---- metrics ---- */

vs_status vs_detector_quality_measure(const vs_faith_report* report,
                                      const vs_pairs* labeled,
                                      double threshold,
                                      vs_detector_quality* out) {
  return Guard([&] {
    Require(report && labeled && out, "NULL argument");
    std::vector<vs::GoldLabel> labels;
    labels.reserve(labeled->pairs.size());
    for (std::size_t i = 0; i < labeled->pairs.size(); ++i) {
      Require(labeled->labels[i] >= 0, "pair has no label");
      labels.push_back({labeled->pairs[i].id, labeled->labels[i] == 1});
    }
    const auto q = vs::MeasureDetector(report->report.pairs, labels, threshold);
    *out = {q.threshold,      q.true_positives,  q.false_positives,
            q.true_negatives, q.false_negatives, q.precision,
            q.recall};
  });
}

vs_status vs_detector_quality_write(const vs_detector_quality* sweep, size_t n,
                                    vs_format format, const char* path) {
  return Guard([&] {
    Require((sweep || n == 0) && path, "NULL argument");
    std::vector<vs::DetectorQuality> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(FromQuality(sweep[i]));
    vs::EmitReport(rows, ToFormat(format), path);
  });
}

vs_status vs_evaluate_accuracy(const char* predictions_path,
                               const char* gold_path, int normalize,
                               vs_accuracy* out) {
  return Guard([&] {
    Require(predictions_path && gold_path && out, "NULL argument");
    const auto predictions = vs::LoadAnswerPredictions(predictions_path);
    const auto gold = vs::LoadQa(gold_path, vs::ValidationMode::kStrict);
    const auto result = vs::Accuracy(predictions, gold, normalize != 0);
    *out = {result.n, result.correct, result.accuracy};
  });
}

vs_status vs_accuracy_write(const vs_accuracy* result, vs_format format,
                            const char* path) {
  return Guard([&] {
    Require(result && path, "NULL argument");
    const vs::AccuracyResult r{result->n, result->correct, result->accuracy};
    vs::EmitReport(r, ToFormat(format), path);
  });
}

vs_status vs_qa_load(const char* path, int strict, vs_qa** out) {
  return Guard([&] {
    Require(path && out, "NULL argument");
    auto handle = std::make_unique<vs_qa>();
    handle->load = vs::ParseQa(path);
    if (strict && !handle->load.issues.empty()) {
      throw vs::DatasetError(path, handle->load.issues);
    }
    handle->issues = IssueLines(handle->load.issues);
    handle->videos = vs::SummarizeQa(handle->load.pairs).videos;
    Adopt(std::move(handle), out);
  });
}

void vs_qa_destroy(vs_qa* qa) { delete qa; }

size_t vs_qa_total_rows(const vs_qa* qa) { return qa ? qa->load.total_rows : 0; }

size_t vs_qa_pair_count(const vs_qa* qa) {
  return qa ? qa->load.pairs.size() : 0;
}

size_t vs_qa_video_count(const vs_qa* qa) { return qa ? qa->videos : 0; }

size_t vs_qa_issue_count(const vs_qa* qa) { return qa ? qa->issues.size() : 0; }

const char* vs_qa_issue(const vs_qa* qa, size_t i) {
  if (!qa || i >= qa->issues.size()) return nullptr;
  return qa->issues[i].c_str();
}

/* ---- knowledge base ---- */

vs_status vs_kb_build(const char* video_id, const vs_kb_feature* features,
                      size_t n, vs_kb** out) {
  return Guard([&] {
    Require(video_id && out && (features || n == 0), "NULL argument");
    std::vector<vs::FeatureInput> inputs;
    inputs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = features[i];
      Require(f.vector != nullptr && f.dim > 0, "feature vector is empty");
      inputs.push_back(
          {vs::Embedding(std::vector<double>(f.vector, f.vector + f.dim)),
           Str(f.text), ToSource(f.source),
           f.has_timestamp ? std::optional<double>(f.timestamp)
                           : std::nullopt});
    }
    auto kb = vs::SessionKnowledgeBase::Build(video_id, std::move(inputs));
    Adopt(std::make_unique<vs_kb>(vs_kb{std::move(kb)}), out);
  });
}

vs_status vs_kb_from_texts(const vs_embedder* embedder, const char* video_id,
                           const char* const* texts, size_t n,
                           vs_source source, vs_kb** out) {
  return Guard([&] {
    Require(embedder && video_id && out && (texts || n == 0), "NULL argument");
    std::vector<std::string> owned;
    owned.reserve(n);
    for (std::size_t i = 0; i < n; ++i) owned.push_back(Str(texts[i]));
    auto kb = vs::SessionKnowledgeBase::FromTexts(video_id, owned,
                                                  *embedder->impl,
                                                  ToSource(source));
    Adopt(std::make_unique<vs_kb>(vs_kb{std::move(kb)}), out);
  });
}

vs_status vs_kb_load(const char* path, vs_kb** out) {
  return Guard([&] {
    Require(path && out, "NULL argument");
    Adopt(std::make_unique<vs_kb>(
              vs_kb{vs::SessionKnowledgeBase::LoadSnapshot(path)}),
          out);
  });
}

vs_status vs_kb_save(const vs_kb* kb, const char* path) {
  return Guard([&] {
    Require(kb && path, "NULL argument");
    kb->kb.SaveSnapshot(path);
  });
}

void vs_kb_destroy(vs_kb* kb) { delete kb; }

size_t vs_kb_size(const vs_kb* kb) { return kb ? kb->kb.size() : 0; }

size_t vs_kb_dim(const vs_kb* kb) { return kb ? kb->kb.dim() : 0; }

const char* vs_kb_video_id(const vs_kb* kb) {
  return kb ? kb->kb.video_id().c_str() : nullptr;
}

const char* vs_kb_entry_id(const vs_kb* kb, size_t index) {
  if (!kb || index >= kb->kb.size()) return nullptr;
  return kb->kb.entry(index).entry_id.c_str();
}

const char* vs_kb_entry_text(const vs_kb* kb, size_t index) {
  if (!kb || index >= kb->kb.size()) return nullptr;
  return kb->kb.entry(index).text.c_str();
}

vs_status vs_kb_search(const vs_kb* kb, const double* query, size_t dim,
                       size_t k, vs_search_hit* hits, size_t capacity,
                       size_t* n_hits) {
  return Guard([&] {
    Require(kb && query && n_hits && (hits || capacity == 0), "NULL argument");
    Require(dim > 0, "query dim must be >= 1");
    const auto found = kb->kb.Search(
        vs::Embedding(std::vector<double>(query, query + dim)), k);
    *n_hits = found.size();
    for (std::size_t i = 0; i < found.size() && i < capacity; ++i) {
      hits[i] = {found[i].index, found[i].score, found[i].rank};
    }
  });
}

/* ---- mitigation ---- */

vs_status vs_split_claims(const char* caption, vs_claims** out) {
  return Guard([&] {
    Require(caption && out, "NULL argument");
    Adopt(std::make_unique<vs_claims>(vs_claims{vs::SplitClaims(caption)}),
          out);
  });
}

void vs_claims_destroy(vs_claims* claims) { delete claims; }

size_t vs_claims_count(const vs_claims* claims) {
  return claims ? claims->texts.size() : 0;
}

const char* vs_claims_text(const vs_claims* claims, size_t i) {
  if (!claims || i >= claims->texts.size()) return nullptr;
  return claims->texts[i].c_str();
}

vs_status vs_reviser_create_stub(vs_reviser** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    auto handle = std::make_unique<vs_reviser>();
    handle->impl = std::make_unique<vs::StubReviser>();
    Adopt(std::move(handle), out);
  });
}

vs_status vs_reviser_create_llm(const vs_provider_config* config,
                                int max_tokens, vs_reviser** out) {
  return Guard([&] {
    Require(out != nullptr, "out is NULL");
    auto handle = std::make_unique<vs_reviser>();
    auto llm = std::make_unique<vs::LlmReviser>(ToProvider(config), max_tokens);
    handle->llm = llm.get();
    handle->impl = std::move(llm);
    Adopt(std::move(handle), out);
  });
}

void vs_reviser_destroy(vs_reviser* reviser) { delete reviser; }

vs_client_metrics vs_reviser_metrics(const vs_reviser* reviser) {
  if (!reviser || !reviser->llm) return {};
  return ToMetrics(reviser->llm->client().metrics());
}

void vs_mitigation_params_init(vs_mitigation_params* params) {
  if (!params) return;
  params->k = vs::kDefaultEvidenceK;
  params->tau_g = vs::kDefaultGroundingThreshold;
  params->max_iter = vs::kDefaultMaxIterations;
}

vs_status vs_mitigate(const char* id, const char* caption, const vs_kb* kb,
                      const vs_embedder* embedder, const vs_reviser* reviser,
                      const vs_mitigation_params* params,
                      vs_mitigation** out) {
  return Guard([&] {
    Require(id && caption && kb && embedder && reviser && out,
            "NULL argument");
    vs::MitigationOptions options;
    if (params) {
      options.verify.k = params->k;
      options.verify.tau_g = params->tau_g;
      options.max_iter = params->max_iter;
    }
    auto handle = std::make_unique<vs_mitigation>();
    handle->record.id = id;
    handle->record.outcome =
        vs::Mitigate(caption, kb->kb, *embedder->impl, *reviser->impl, options);
    Adopt(std::move(handle), out);
  });
}

void vs_mitigation_destroy(vs_mitigation* mitigation) { delete mitigation; }

const char* vs_mitigation_id(const vs_mitigation* m) {
  return m ? m->record.id.c_str() : nullptr;
}

const char* vs_mitigation_original(const vs_mitigation* m) {
  return m ? m->record.outcome.original.c_str() : nullptr;
}

const char* vs_mitigation_revised(const vs_mitigation* m) {
  return m ? m->record.outcome.revised.c_str() : nullptr;
}

size_t vs_mitigation_iterations(const vs_mitigation* m) {
  return m ? m->record.outcome.iterations : 0;
}

int vs_mitigation_changed(const vs_mitigation* m) {
  return m && m->record.outcome.changed ? 1 : 0;
}

int vs_mitigation_fallback(const vs_mitigation* m) {
  return m && m->record.outcome.fallback ? 1 : 0;
}

const char* vs_mitigation_fallback_reason(const vs_mitigation* m) {
  return m ? m->record.outcome.fallback_reason.c_str() : nullptr;
}

double vs_mitigation_grounded_before(const vs_mitigation* m) {
  return m ? m->record.outcome.initial.grounded_fraction : 0.0;
}

double vs_mitigation_grounded_after(const vs_mitigation* m) {
  return m ? m->record.outcome.final.grounded_fraction : 0.0;
}

vs_status vs_mitigation_write(const vs_mitigation* const* items, size_t n,
                              vs_format format, const char* path) {
  return Guard([&] {
    Require((items || n == 0) && path, "NULL argument");
    std::vector<vs::MitigationRecord> records;
    records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Require(items[i] != nullptr, "mitigation item is NULL");
      records.push_back(items[i]->record);
    }
    vs::EmitReport(records, ToFormat(format), path);
  });
}

}  // extern "C"
