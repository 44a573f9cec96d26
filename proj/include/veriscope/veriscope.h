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

/*
 * veriscope C API.
 *
 * Opaque handles are created by vs_*_create / vs_*_load style functions and
 * released with the matching vs_*_destroy. Every fallible call returns a
 * vs_status; on failure a human-readable message is available from
 * vs_last_error() on the calling thread until that thread's next call.
 * Strings returned by accessors are owned by the handle and stay valid until
 * the handle is destroyed.
 */
#ifndef VERISCOPE_H_
#define VERISCOPE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(VERISCOPE_BUILDING_LIBRARY)
#define VS_API __attribute__((visibility("default")))
#else
#define VS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vs_status {
  VS_OK = 0,
  VS_ERR_USAGE = 1,
  VS_ERR_IO = 2,
  VS_ERR_PROVIDER_UNAVAILABLE = 3,
  VS_ERR_CONTRACT_VIOLATION = 4,
  VS_ERR_VALIDATION = 5,
  VS_ERR_VERIFICATION_IMPOSSIBLE = 6,
  VS_ERR_GENERATION = 7,
  VS_ERR_INTERNAL = 8
} vs_status;

typedef enum vs_format { VS_FORMAT_JSON = 0, VS_FORMAT_CSV = 1 } vs_format;

typedef enum vs_source {
  VS_SOURCE_FRAME_FEATURE = 0,
  VS_SOURCE_METADATA = 1,
  VS_SOURCE_REFERENCE_CAPTION = 2
} vs_source;

VS_API const char* vs_version(void);
VS_API const char* vs_last_error(void);
VS_API const char* vs_status_name(vs_status status);

/* ---- providers ---------------------------------------------------------- */

typedef struct vs_provider_config {
  const char* endpoint;     /* http://host[:port][/path] */
  int64_t timeout_ms;       /* default 30000 */
  int32_t max_retries;      /* default 2, at most 10 */
  int64_t backoff_base_ms;  /* default 250, doubled per retry */
  const char* bearer_token; /* optional, may be NULL */
} vs_provider_config;

/* Fills in defaults with a NULL endpoint. */
VS_API void vs_provider_config_init(vs_provider_config* config);

typedef struct vs_client_metrics {
  uint64_t calls;
  uint64_t attempts;
  uint64_t retries;
  uint64_t failures;
} vs_client_metrics;

/* ---- embedding ---------------------------------------------------------- */

typedef struct vs_embedder vs_embedder;

VS_API vs_status vs_embedder_create_hash(size_t dim, vs_embedder** out);
VS_API vs_status vs_embedder_create_remote(const vs_provider_config* config,
                                           size_t dim, vs_embedder** out);
VS_API void vs_embedder_destroy(vs_embedder* embedder);
VS_API size_t vs_embedder_dim(const vs_embedder* embedder);
/* Zeroed for the hash embedder. */
VS_API vs_client_metrics vs_embedder_metrics(const vs_embedder* embedder);

/* Writes dim doubles into `out`; out_len must equal the embedder dim. */
VS_API vs_status vs_embed_text(const vs_embedder* embedder, const char* text,
                               double* out, size_t out_len);
VS_API vs_status vs_cosine(const double* a, const double* b, size_t dim,
                           double* out);
/* 1 when score < threshold (hallucination), 0 otherwise, -1 when the
 * threshold lies outside [0, 1]. */
VS_API int vs_classify(double score, double threshold);

/* ---- caption corpora ---------------------------------------------------- */

typedef struct vs_captions vs_captions;

/* strict != 0 fails with VS_ERR_VALIDATION on any defective record;
 * otherwise defective records are skipped and listed as issues. */
VS_API vs_status vs_captions_load(const char* path, int strict,
                                  vs_captions** out);
VS_API void vs_captions_destroy(vs_captions* captions);
VS_API size_t vs_captions_total_records(const vs_captions* captions);
VS_API size_t vs_captions_video_count(const vs_captions* captions);
VS_API const char* vs_captions_video_id(const vs_captions* captions,
                                        size_t video);
VS_API double vs_captions_duration(const vs_captions* captions, size_t video);
VS_API size_t vs_captions_event_count(const vs_captions* captions,
                                      size_t video);
VS_API const char* vs_captions_event_text(const vs_captions* captions,
                                          size_t video, size_t event);
VS_API size_t vs_captions_issue_count(const vs_captions* captions);
/* "<record>: <message>" */
VS_API const char* vs_captions_issue(const vs_captions* captions, size_t i);

typedef struct vs_caption_stats {
  size_t videos;
  size_t events;
  double mean_caption_words;
  double mean_duration;
} vs_caption_stats;
VS_API vs_caption_stats vs_captions_stats(const vs_captions* captions);

typedef struct vs_pairs vs_pairs;

VS_API vs_status vs_pairs_create(vs_pairs** out);
VS_API vs_status vs_pairs_add(vs_pairs* pairs, const char* id,
                              const char* generated, const char* reference);
VS_API void vs_pairs_destroy(vs_pairs* pairs);
VS_API size_t vs_pairs_count(const vs_pairs* pairs);
VS_API const char* vs_pairs_id(const vs_pairs* pairs, size_t i);
VS_API const char* vs_pairs_generated(const vs_pairs* pairs, size_t i);
VS_API const char* vs_pairs_reference(const vs_pairs* pairs, size_t i);
/* Label of a forged pair: 1 hallucinated, 0 clean, -1 unlabeled. */
VS_API int vs_pairs_label(const vs_pairs* pairs, size_t i);
/* Video the pair belongs to: the captions video for paired predictions,
 * the pair id itself otherwise. */
VS_API const char* vs_pairs_video_id(const vs_pairs* pairs, size_t i);

/* Pairs predictions ({"<video_id>": [caption...]}) with caption events. */
VS_API vs_status vs_pairs_from_predictions(const vs_captions* captions,
                                           const char* predictions_path,
                                           vs_pairs** out);
/* Events covered by predictions vs all events of the captions corpus. */
VS_API void vs_pairs_coverage(const vs_pairs* pairs, size_t* paired_events,
                              size_t* total_events);

VS_API vs_status vs_pairs_load_forged(const char* path, vs_pairs** out);
VS_API vs_status vs_pairs_write_forged(const vs_pairs* pairs,
                                       const char* path);

typedef struct vs_synth_params {
  uint64_t seed;             /* default 42 */
  size_t n_pairs;            /* default 100 */
  double hallucination_rate; /* default 0.5 */
  const char* spec_path;     /* optional JSON spec; overrides the above */
} vs_synth_params;

VS_API void vs_synth_params_init(vs_synth_params* params);
VS_API vs_status vs_forge(const vs_synth_params* params, vs_pairs** out);

/* ---- faithfulness ------------------------------------------------------- */

typedef struct vs_faith_report vs_faith_report;

VS_API vs_status vs_score_corpus(const vs_embedder* embedder,
                                 const vs_pairs* pairs, double threshold,
                                 vs_faith_report** out);
VS_API void vs_faith_report_destroy(vs_faith_report* report);
VS_API size_t vs_faith_report_count(const vs_faith_report* report);
VS_API double vs_faith_report_mean(const vs_faith_report* report);
VS_API double vs_faith_report_threshold(const vs_faith_report* report);
VS_API size_t vs_faith_report_hallucinations(const vs_faith_report* report);
VS_API vs_status vs_faith_report_pair(const vs_faith_report* report, size_t i,
                                      const char** id, double* score,
                                      int* hallucination);
VS_API vs_status vs_faith_report_write(const vs_faith_report* report,
                                       vs_format format, const char* path);

/* ---- metrics ------------------------------------------------------------ */

typedef struct vs_detector_quality {
  double threshold;
  size_t true_positives;
  size_t false_positives;
  size_t true_negatives;
  size_t false_negatives;
  double precision;
  double recall;
} vs_detector_quality;

/* Scores the labeled pairs of `report`'s corpus at `threshold`. */
VS_API vs_status vs_detector_quality_measure(const vs_faith_report* report,
                                             const vs_pairs* labeled,
                                             double threshold,
                                             vs_detector_quality* out);
VS_API vs_status vs_detector_quality_write(const vs_detector_quality* sweep,
                                           size_t n, vs_format format,
                                           const char* path);

typedef struct vs_accuracy {
  size_t n;
  size_t correct;
  double accuracy;
} vs_accuracy;

/* predictions: [{"id", "answer"}...]; gold: QA rows. */
VS_API vs_status vs_evaluate_accuracy(const char* predictions_path,
                                      const char* gold_path, int normalize,
                                      vs_accuracy* out);
VS_API vs_status vs_accuracy_write(const vs_accuracy* result,
                                   vs_format format, const char* path);

typedef struct vs_qa vs_qa;

VS_API vs_status vs_qa_load(const char* path, int strict, vs_qa** out);
VS_API void vs_qa_destroy(vs_qa* qa);
VS_API size_t vs_qa_total_rows(const vs_qa* qa);
VS_API size_t vs_qa_pair_count(const vs_qa* qa);
VS_API size_t vs_qa_video_count(const vs_qa* qa);
VS_API size_t vs_qa_issue_count(const vs_qa* qa);
VS_API const char* vs_qa_issue(const vs_qa* qa, size_t i);

/* ---- knowledge base ----------------------------------------------------- */

typedef struct vs_kb vs_kb;

typedef struct vs_kb_feature {
  const double* vector;
  size_t dim;
  const char* text;     /* may be NULL or "" for frame features */
  vs_source source;
  int has_timestamp;
  double timestamp;
} vs_kb_feature;

typedef struct vs_search_hit {
  size_t entry_index;
  double score;
  size_t rank;
} vs_search_hit;

VS_API vs_status vs_kb_build(const char* video_id,
                             const vs_kb_feature* features, size_t n,
                             vs_kb** out);
/* Embeds each text with `embedder`; one entry per text. */
VS_API vs_status vs_kb_from_texts(const vs_embedder* embedder,
                                  const char* video_id,
                                  const char* const* texts, size_t n,
                                  vs_source source, vs_kb** out);
VS_API vs_status vs_kb_load(const char* path, vs_kb** out);
VS_API vs_status vs_kb_save(const vs_kb* kb, const char* path);
VS_API void vs_kb_destroy(vs_kb* kb);
VS_API size_t vs_kb_size(const vs_kb* kb);
VS_API size_t vs_kb_dim(const vs_kb* kb);
VS_API const char* vs_kb_video_id(const vs_kb* kb);
VS_API const char* vs_kb_entry_id(const vs_kb* kb, size_t index);
VS_API const char* vs_kb_entry_text(const vs_kb* kb, size_t index);
/* Writes up to `capacity` hits; *n_hits receives min(k, size). */
VS_API vs_status vs_kb_search(const vs_kb* kb, const double* query,
                              size_t dim, size_t k, vs_search_hit* hits,
                              size_t capacity, size_t* n_hits);

/* ---- mitigation --------------------------------------------------------- */

/* Sentence-level claims of a caption (split on '.', '!', '?'). */
typedef struct vs_claims vs_claims;

VS_API vs_status vs_split_claims(const char* caption, vs_claims** out);
VS_API void vs_claims_destroy(vs_claims* claims);
VS_API size_t vs_claims_count(const vs_claims* claims);
VS_API const char* vs_claims_text(const vs_claims* claims, size_t i);

typedef struct vs_reviser vs_reviser;

VS_API vs_status vs_reviser_create_stub(vs_reviser** out);
VS_API vs_status vs_reviser_create_llm(const vs_provider_config* config,
                                       int max_tokens, vs_reviser** out);
VS_API void vs_reviser_destroy(vs_reviser* reviser);
VS_API vs_client_metrics vs_reviser_metrics(const vs_reviser* reviser);

typedef struct vs_mitigation_params {
  size_t k;        /* default 5 */
  double tau_g;    /* default 0.5 */
  size_t max_iter; /* default 3 */
} vs_mitigation_params;

VS_API void vs_mitigation_params_init(vs_mitigation_params* params);

typedef struct vs_mitigation vs_mitigation;

VS_API vs_status vs_mitigate(const char* id, const char* caption,
                             const vs_kb* kb, const vs_embedder* embedder,
                             const vs_reviser* reviser,
                             const vs_mitigation_params* params,
                             vs_mitigation** out);
VS_API void vs_mitigation_destroy(vs_mitigation* mitigation);
VS_API const char* vs_mitigation_id(const vs_mitigation* m);
VS_API const char* vs_mitigation_original(const vs_mitigation* m);
VS_API const char* vs_mitigation_revised(const vs_mitigation* m);
VS_API size_t vs_mitigation_iterations(const vs_mitigation* m);
VS_API int vs_mitigation_changed(const vs_mitigation* m);
VS_API int vs_mitigation_fallback(const vs_mitigation* m);
VS_API const char* vs_mitigation_fallback_reason(const vs_mitigation* m);
VS_API double vs_mitigation_grounded_before(const vs_mitigation* m);
VS_API double vs_mitigation_grounded_after(const vs_mitigation* m);

VS_API vs_status vs_mitigation_write(const vs_mitigation* const* items,
                                     size_t n, vs_format format,
                                     const char* path);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* VERISCOPE_H_ */
