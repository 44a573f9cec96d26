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

// veriscope: hallucination detection and retrieval-grounded mitigation for
// generated video captions.
//
//   veriscope detect            score generated captions against references
//   veriscope mitigate          verify and revise captions against a
//                               per-video knowledge base
//   veriscope evaluate          exact-match QA accuracy
//   veriscope synth             forge a labeled corpus with injected
//                               hallucinations
//   veriscope validate-dataset  check caption or QA annotation files
//
// Exit codes: 0 success, 1 usage or I/O error, 2 corpus mean below the
// detection threshold, 3 dataset validation failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "run_config.hpp"
#include "veriscope/veriscope.h"

namespace {

namespace fs = std::filesystem;
using veriscope::cli::FlagValues;
using veriscope::cli::OutputFormats;
using veriscope::cli::ProviderSettings;
using veriscope::cli::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitHallucinating = 2;
constexpr int kExitInvalidDataset = 3;

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

template <auto Destroy>
struct Release {
  template <typename T>
  void operator()(T* handle) const {
    Destroy(handle);
  }
};

using Embedder = std::unique_ptr<vs_embedder, Release<vs_embedder_destroy>>;
using Captions = std::unique_ptr<vs_captions, Release<vs_captions_destroy>>;
using Pairs = std::unique_ptr<vs_pairs, Release<vs_pairs_destroy>>;
using FaithReport =
    std::unique_ptr<vs_faith_report, Release<vs_faith_report_destroy>>;
using Qa = std::unique_ptr<vs_qa, Release<vs_qa_destroy>>;
using Kb = std::unique_ptr<vs_kb, Release<vs_kb_destroy>>;
using Claims = std::unique_ptr<vs_claims, Release<vs_claims_destroy>>;
using Reviser = std::unique_ptr<vs_reviser, Release<vs_reviser_destroy>>;
using Mitigation =
    std::unique_ptr<vs_mitigation, Release<vs_mitigation_destroy>>;

void Check(vs_status status, const std::string& context) {
  if (status == VS_OK) return;
  const int code =
      status == VS_ERR_VALIDATION ? kExitInvalidDataset : kExitError;
  throw CliError(code, context + ": " + vs_last_error());
}

std::string Num(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

vs_provider_config ToProvider(const ProviderSettings& settings) {
  vs_provider_config config;
  vs_provider_config_init(&config);
  config.endpoint = settings.endpoint.c_str();
  config.timeout_ms = settings.timeout_ms;
  config.max_retries = settings.max_retries;
  config.backoff_base_ms = settings.backoff_base_ms;
  config.bearer_token =
      settings.bearer_token.empty() ? nullptr : settings.bearer_token.c_str();
  return config;
}

Embedder MakeEmbedder(const RunConfig& config) {
  vs_embedder* raw = nullptr;
  if (config.embedder == "remote") {
    if (config.embedding.endpoint.empty()) {
      throw CliError(kExitError,
                     "--embedder remote needs --embed-endpoint or "
                     "VERISCOPE_EMBED_ENDPOINT");
    }
    const auto provider = ToProvider(config.embedding);
    Check(vs_embedder_create_remote(&provider, config.dim, &raw), "embedder");
  } else {
    Check(vs_embedder_create_hash(config.dim, &raw), "embedder");
  }
  return Embedder(raw);
}

// Writes one report in every requested format as <out>/<stem>.{json,csv}.
template <typename Writer>
void WriteOutputs(const RunConfig& config, const std::string& stem,
                  Writer&& write) {
  const fs::path dir(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliError(kExitError, "cannot create " + dir.string());
  if (config.format != OutputFormats::kCsv) {
    const auto path = (dir / (stem + ".json")).string();
    Check(write(VS_FORMAT_JSON, path.c_str()), "write " + path);
  }
  if (config.format != OutputFormats::kJson) {
    const auto path = (dir / (stem + ".csv")).string();
    Check(write(VS_FORMAT_CSV, path.c_str()), "write " + path);
  }
}

struct CorpusInput {
  Pairs pairs;
  Captions captions;  // set when pairs came from captions + predictions
};

CorpusInput LoadCorpus(const RunConfig& config) {
  CorpusInput input;
  vs_pairs* raw = nullptr;
  if (!config.corpus.empty()) {
    Check(vs_pairs_load_forged(config.corpus.c_str(), &raw), "corpus");
    input.pairs.reset(raw);
    return input;
  }
  if (config.captions.empty() || config.predictions.empty()) {
    throw CliError(kExitError,
                   "provide --corpus FILE or both --captions and "
                   "--predictions");
  }
  vs_captions* captions = nullptr;
  Check(vs_captions_load(config.captions.c_str(), config.strict ? 1 : 0,
                         &captions),
        "captions");
  input.captions.reset(captions);
  for (std::size_t i = 0; i < vs_captions_issue_count(captions); ++i) {
    std::cerr << "warning: skipped " << vs_captions_issue(captions, i) << "\n";
  }
  Check(vs_pairs_from_predictions(captions, config.predictions.c_str(), &raw),
        "predictions");
  input.pairs.reset(raw);
  std::size_t paired = 0;
  std::size_t total = 0;
  vs_pairs_coverage(raw, &paired, &total);
  std::cout << "coverage " << paired << "/" << total << " events paired\n";
  return input;
}

bool AllLabeled(const vs_pairs* pairs) {
  for (std::size_t i = 0; i < vs_pairs_count(pairs); ++i) {
    if (vs_pairs_label(pairs, i) < 0) return false;
  }
  return vs_pairs_count(pairs) > 0;
}

FaithReport Score(const vs_embedder* embedder, const vs_pairs* pairs,
                  double threshold) {
  vs_faith_report* raw = nullptr;
  Check(vs_score_corpus(embedder, pairs, threshold, &raw), "score");
  return FaithReport(raw);
}

void PrintReport(const std::string& label, const vs_faith_report* report) {
  std::cout << label << "n=" << vs_faith_report_count(report)
            << " corpus_mean=" << Num(vs_faith_report_mean(report))
            << " hallucinations=" << vs_faith_report_hallucinations(report)
            << " threshold=" << Num(vs_faith_report_threshold(report)) << "\n";
}

void WriteFaithReport(const RunConfig& config, const std::string& stem,
                      const vs_faith_report* report) {
  WriteOutputs(config, stem, [&](vs_format format, const char* path) {
    return vs_faith_report_write(report, format, path);
  });
}

int RunDetect(const RunConfig& config, const std::vector<double>& sweep) {
  auto input = LoadCorpus(config);
  auto embedder = MakeEmbedder(config);
  auto report = Score(embedder.get(), input.pairs.get(), config.threshold);
  WriteFaithReport(config, "faithfulness", report.get());
  PrintReport("", report.get());

  if (AllLabeled(input.pairs.get())) {
    std::vector<double> thresholds = sweep;
    if (thresholds.empty()) thresholds.push_back(config.threshold);
    std::vector<vs_detector_quality> rows(thresholds.size());
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      Check(vs_detector_quality_measure(report.get(), input.pairs.get(),
                                        thresholds[i], &rows[i]),
            "detector quality");
      const auto& q = rows[i];
      std::cout << "quality threshold=" << Num(q.threshold)
                << " tp=" << q.true_positives << " fp=" << q.false_positives
                << " tn=" << q.true_negatives << " fn=" << q.false_negatives
                << " precision=" << Num(q.precision)
                << " recall=" << Num(q.recall) << "\n";
    }
    WriteOutputs(config, "quality", [&](vs_format format, const char* path) {
      return vs_detector_quality_write(rows.data(), rows.size(), format, path);
    });
  }
  if (vs_faith_report_mean(report.get()) < config.threshold) {
    std::cout << "corpus mean below threshold: hallucinating\n";
    return kExitHallucinating;
  }
  return kExitOk;
}

std::vector<std::string> Sentences(const std::vector<std::string>& texts) {
  std::vector<std::string> out;
  for (const auto& text : texts) {
    vs_claims* raw = nullptr;
    Check(vs_split_claims(text.c_str(), &raw), "split");
    Claims claims(raw);
    for (std::size_t i = 0; i < vs_claims_count(raw); ++i) {
      out.emplace_back(vs_claims_text(raw, i));
    }
  }
  return out;
}

std::string SnapshotName(std::string video_id) {
  for (char& c : video_id) {
    if (c == '/' || c == '\\') c = '_';
  }
  return video_id + ".json";
}

// Session knowledge bases keyed by video id, built on first use.
class KbCache {
 public:
  KbCache(const RunConfig& config, const CorpusInput& input,
          const vs_embedder* embedder, bool save)
      : config_(config), input_(input), embedder_(embedder), save_(save) {
    if (input.captions) {
      const auto* captions = input.captions.get();
      for (std::size_t v = 0; v < vs_captions_video_count(captions); ++v) {
        video_index_.emplace(vs_captions_video_id(captions, v), v);
      }
    }
  }

  // nullptr when the video has no usable evidence text.
  const vs_kb* Get(std::size_t pair_index) {
    const std::string video_id =
        vs_pairs_video_id(input_.pairs.get(), pair_index);
    auto it = cache_.find(video_id);
    if (it != cache_.end()) return it->second.get();
    Kb kb = Build(video_id, pair_index);
    const vs_kb* result = kb.get();
    if (kb && save_) {
      const fs::path dir = fs::path(config_.out) / "kb";
      fs::create_directories(dir);
      const auto path = (dir / SnapshotName(video_id)).string();
      Check(vs_kb_save(kb.get(), path.c_str()), "save " + path);
    }
    cache_.emplace(video_id, std::move(kb));
    return result;
  }

 private:
  Kb Build(const std::string& video_id, std::size_t pair_index) {
    vs_kb* raw = nullptr;
    if (!config_.kb_dir.empty()) {
      const fs::path path = fs::path(config_.kb_dir) / SnapshotName(video_id);
      if (fs::exists(path)) {
        Check(vs_kb_load(path.string().c_str(), &raw), "load " + path.string());
        return Kb(raw);
      }
    }
    std::vector<std::string> texts;
    if (input_.captions) {
      const auto* captions = input_.captions.get();
      const std::size_t v = video_index_.at(video_id);
      for (std::size_t e = 0; e < vs_captions_event_count(captions, v); ++e) {
        texts.emplace_back(vs_captions_event_text(captions, v, e));
      }
    } else {
      texts.emplace_back(vs_pairs_reference(input_.pairs.get(), pair_index));
    }
    const auto sentences = Sentences(texts);
    if (sentences.empty()) return Kb(nullptr);
    std::vector<const char*> ptrs;
    for (const auto& s : sentences) ptrs.push_back(s.c_str());
    Check(vs_kb_from_texts(embedder_, video_id.c_str(), ptrs.data(),
                           ptrs.size(), VS_SOURCE_REFERENCE_CAPTION, &raw),
          "knowledge base " + video_id);
    return Kb(raw);
  }

  const RunConfig& config_;
  const CorpusInput& input_;
  const vs_embedder* embedder_;
  bool save_;
  std::map<std::string, std::size_t> video_index_;
  std::map<std::string, Kb> cache_;
};

Reviser MakeReviser(const RunConfig& config) {
  vs_reviser* raw = nullptr;
  if (config.reviser == "llm") {
    if (config.generation.endpoint.empty()) {
      throw CliError(kExitError,
                     "--reviser llm needs --gen-endpoint or "
                     "VERISCOPE_GEN_ENDPOINT");
    }
    const auto provider = ToProvider(config.generation);
    Check(vs_reviser_create_llm(&provider, 256, &raw), "reviser");
  } else {
    Check(vs_reviser_create_stub(&raw), "reviser");
  }
  return Reviser(raw);
}

int RunMitigate(const RunConfig& config, bool save_kb) {
  auto input = LoadCorpus(config);
  auto embedder = MakeEmbedder(config);
  auto reviser = MakeReviser(config);
  vs_mitigation_params params;
  vs_mitigation_params_init(&params);
  params.k = config.k;
  params.tau_g = config.tau_g;
  params.max_iter = config.max_iter;

  const vs_pairs* pairs = input.pairs.get();
  auto before = Score(embedder.get(), pairs, config.threshold);

  KbCache kbs(config, input, embedder.get(), save_kb);
  std::vector<Mitigation> outcomes;
  vs_pairs* revised_raw = nullptr;
  Check(vs_pairs_create(&revised_raw), "pairs");
  Pairs revised(revised_raw);
  std::size_t fallbacks = 0;
  std::size_t skipped = 0;
  std::string last_reason;
  double grounded_before = 0.0;
  double grounded_after = 0.0;

  for (std::size_t i = 0; i < vs_pairs_count(pairs); ++i) {
    const char* id = vs_pairs_id(pairs, i);
    const char* generated = vs_pairs_generated(pairs, i);
    const vs_kb* kb = kbs.Get(i);
    std::string final_caption = generated;
    vs_mitigation* raw = nullptr;
    const vs_status status =
        kb ? vs_mitigate(id, generated, kb, embedder.get(), reviser.get(),
                         &params, &raw)
           : VS_ERR_VERIFICATION_IMPOSSIBLE;
    if (status == VS_ERR_VERIFICATION_IMPOSSIBLE) {
      std::cerr << "warning: " << id
                << ": no evidence text, caption left unchanged\n";
      ++skipped;
    } else {
      Check(status, std::string("mitigate ") + id);
      Mitigation outcome(raw);
      final_caption = vs_mitigation_revised(raw);
      grounded_before += vs_mitigation_grounded_before(raw);
      grounded_after += vs_mitigation_grounded_after(raw);
      if (vs_mitigation_fallback(raw)) {
        ++fallbacks;
        last_reason = vs_mitigation_fallback_reason(raw);
      }
      outcomes.push_back(std::move(outcome));
    }
    Check(vs_pairs_add(revised.get(), id, final_caption.c_str(),
                       vs_pairs_reference(pairs, i)),
          "pairs");
  }

  auto after = Score(embedder.get(), revised.get(), config.threshold);
  std::vector<const vs_mitigation*> items;
  for (const auto& m : outcomes) items.push_back(m.get());
  WriteOutputs(config, "mitigation", [&](vs_format format, const char* path) {
    return vs_mitigation_write(items.data(), items.size(), format, path);
  });
  WriteFaithReport(config, "faithfulness_before", before.get());
  WriteFaithReport(config, "faithfulness_after", after.get());

  if (fallbacks > 0) {
    std::cerr << "warning: llm reviser unavailable for " << fallbacks
              << " caption(s); used stub fallback (" << last_reason << ")\n";
  }
  const double mitigated = static_cast<double>(outcomes.size());
  std::cout << "mitigated=" << outcomes.size() << " skipped=" << skipped
            << " fallbacks=" << fallbacks << "\n";
  if (!outcomes.empty()) {
    std::cout << "grounded_fraction_before=" << Num(grounded_before / mitigated)
              << " grounded_fraction_after=" << Num(grounded_after / mitigated)
              << "\n";
  }
  PrintReport("before ", before.get());
  PrintReport("after  ", after.get());
  return kExitOk;
}

int RunEvaluate(const RunConfig& config, bool literal) {
  if (config.qa.empty() || config.answers.empty()) {
    throw CliError(kExitError, "evaluate needs --qa and --answers");
  }
  vs_accuracy result{};
  Check(vs_evaluate_accuracy(config.answers.c_str(), config.qa.c_str(),
                             literal ? 0 : 1, &result),
        "evaluate");
  WriteOutputs(config, "accuracy", [&](vs_format format, const char* path) {
    return vs_accuracy_write(&result, format, path);
  });
  std::cout << "accuracy=" << Num(result.accuracy)
            << " correct=" << result.correct << " n=" << result.n << "\n";
  return kExitOk;
}

int RunSynth(const RunConfig& config, std::size_t n, double rate,
             const std::string& spec_path, const std::string& output) {
  vs_synth_params params;
  vs_synth_params_init(&params);
  params.seed = config.seed;
  params.n_pairs = n;
  params.hallucination_rate = rate;
  params.spec_path = spec_path.empty() ? nullptr : spec_path.c_str();
  vs_pairs* raw = nullptr;
  Check(vs_forge(&params, &raw), "synth");
  Pairs corpus(raw);

  fs::path path = output.empty() ? fs::path(config.out) / "synth_corpus.json"
                                 : fs::path(output);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  Check(vs_pairs_write_forged(raw, path.string().c_str()), "write corpus");
  std::size_t positives = 0;
  for (std::size_t i = 0; i < vs_pairs_count(raw); ++i) {
    positives += vs_pairs_label(raw, i) == 1 ? 1 : 0;
  }
  std::cout << "wrote " << vs_pairs_count(raw) << " pairs (" << positives
            << " hallucinated) to " << path.string() << "\n";
  return kExitOk;
}

std::string DetectKind(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitError, "cannot open " + path);
  char c = 0;
  while (in.get(c)) {
    if (c == '{') return "captions";
    if (c == '[') return "qa";
    if (!std::isspace(static_cast<unsigned char>(c))) break;
  }
  throw CliError(kExitError, path + ": not a captions object or QA list");
}

int RunValidate(const std::string& path, std::string kind, bool strict) {
  if (kind == "auto") kind = DetectKind(path);
  std::size_t issues = 0;
  if (kind == "captions") {
    vs_captions* raw = nullptr;
    Check(vs_captions_load(path.c_str(), 0, &raw), "validate");
    Captions captions(raw);
    const auto stats = vs_captions_stats(raw);
    std::cout << "kind=captions records=" << vs_captions_total_records(raw)
              << " videos=" << stats.videos << " events=" << stats.events
              << " mean_caption_words=" << Num(stats.mean_caption_words)
              << " mean_duration=" << Num(stats.mean_duration) << "\n";
    issues = vs_captions_issue_count(raw);
    for (std::size_t i = 0; i < issues; ++i) {
      std::cout << "error " << vs_captions_issue(raw, i) << "\n";
    }
  } else if (kind == "qa") {
    vs_qa* raw = nullptr;
    Check(vs_qa_load(path.c_str(), 0, &raw), "validate");
    Qa qa(raw);
    std::cout << "kind=qa rows=" << vs_qa_total_rows(raw)
              << " pairs=" << vs_qa_pair_count(raw)
              << " videos=" << vs_qa_video_count(raw) << "\n";
    issues = vs_qa_issue_count(raw);
    for (std::size_t i = 0; i < issues; ++i) {
      std::cout << "error " << vs_qa_issue(raw, i) << "\n";
    }
  } else {
    throw CliError(kExitError, "--kind must be auto, captions or qa");
  }
  std::cout << "issues=" << issues << "\n";
  if (strict && issues > 0) return kExitInvalidDataset;
  return kExitOk;
}

template <typename T>
void OptionalFlag(CLI::App* app, const std::string& name,
                  std::optional<T>& target, const std::string& help) {
  app->add_option_function<T>(
      name, [&target](const T& value) { target = value; }, help);
}

void AddCommonFlags(CLI::App* app, FlagValues& flags) {
  OptionalFlag(app, "--config", flags.config_path,
               "JSON run configuration file");
  OptionalFlag(app, "--embedder", flags.embedder, "hash | remote");
  OptionalFlag(app, "--dim", flags.dim, "embedding dimension (default 256)");
  OptionalFlag(app, "--threshold", flags.threshold,
               "hallucination threshold (default 0.5)");
  OptionalFlag(app, "--tau-g", flags.tau_g,
               "grounding threshold (default 0.5)");
  OptionalFlag(app, "--k", flags.k, "evidence hits per claim (default 5)");
  OptionalFlag(app, "--max-iter", flags.max_iter,
               "revision rounds per caption (default 3)");
  OptionalFlag(app, "--reviser", flags.reviser, "stub | llm");
  OptionalFlag(app, "--format", flags.format, "json | csv | both");
  OptionalFlag(app, "--out", flags.out, "output directory (default .)");
  OptionalFlag(app, "--seed", flags.seed, "random seed (default 42)");
  OptionalFlag(app, "--embed-endpoint", flags.embed_endpoint,
               "remote embedding endpoint URL");
  OptionalFlag(app, "--gen-endpoint", flags.gen_endpoint,
               "remote generation endpoint URL");
  OptionalFlag(app, "--timeout-ms", flags.timeout_ms,
               "provider timeout in milliseconds");
  OptionalFlag(app, "--max-retries", flags.max_retries,
               "provider retries (default 2)");
  OptionalFlag(app, "--backoff-ms", flags.backoff_ms,
               "initial retry backoff in milliseconds (default 250)");
  OptionalFlag(app, "--bearer-token", flags.bearer_token,
               "bearer token sent to providers");
  app->add_flag_callback(
      "--strict", [&flags] { flags.strict = true; },
      "abort on any invalid dataset record");
}

void AddCorpusFlags(CLI::App* app, FlagValues& flags) {
  OptionalFlag(app, "--captions", flags.captions,
               "ActivityNet Captions style reference file");
  OptionalFlag(app, "--predictions", flags.predictions,
               "generated captions keyed by video id");
  OptionalFlag(app, "--corpus", flags.corpus, "forged corpus file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hallucination detection and mitigation for video captions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", vs_version());

  FlagValues flags;

  auto* detect = app.add_subcommand("detect", "score captions for faithfulness");
  AddCommonFlags(detect, flags);
  AddCorpusFlags(detect, flags);
  std::vector<double> sweep;
  detect->add_option("--sweep", sweep,
                     "extra thresholds for the detector quality table")
      ->delimiter(',');

  auto* mitigate =
      app.add_subcommand("mitigate", "verify and revise captions");
  AddCommonFlags(mitigate, flags);
  AddCorpusFlags(mitigate, flags);
  OptionalFlag(mitigate, "--kb-dir", flags.kb_dir,
               "directory of <video_id>.json knowledge base snapshots");
  bool save_kb = false;
  mitigate->add_flag("--save-kb", save_kb,
                     "write knowledge base snapshots under <out>/kb");

  auto* evaluate = app.add_subcommand("evaluate", "QA exact-match accuracy");
  AddCommonFlags(evaluate, flags);
  OptionalFlag(evaluate, "--qa", flags.qa, "gold QA rows");
  OptionalFlag(evaluate, "--answers", flags.answers,
               "predicted answers [{\"id\", \"answer\"}]");
  bool literal = false;
  evaluate->add_flag("--no-normalize", literal,
                     "compare answers without case/whitespace folding");

  auto* synth = app.add_subcommand("synth", "forge a labeled corpus");
  AddCommonFlags(synth, flags);
  std::size_t n_pairs = 100;
  double rate = 0.5;
  std::string spec_path;
  std::string output;
  synth->add_option("--n", n_pairs, "number of pairs (default 100)");
  synth->add_option("--rate", rate, "hallucination rate (default 0.5)");
  synth->add_option("--spec", spec_path, "JSON synth spec");
  synth->add_option("-o,--output", output,
                    "output file (default <out>/synth_corpus.json)");

  auto* validate =
      app.add_subcommand("validate-dataset", "check an annotation file");
  AddCommonFlags(validate, flags);
  std::string dataset_path;
  std::string kind = "auto";
  validate->add_option("path", dataset_path, "dataset file")->required();
  validate->add_option("--kind", kind, "auto | captions | qa");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const RunConfig config = veriscope::cli::ResolveConfig(flags);
    if (detect->parsed()) return RunDetect(config, sweep);
    if (mitigate->parsed()) return RunMitigate(config, save_kb);
    if (evaluate->parsed()) return RunEvaluate(config, literal);
    if (synth->parsed()) {
      return RunSynth(config, n_pairs, rate, spec_path, output);
    }
    if (validate->parsed()) {
      return RunValidate(dataset_path, kind, config.strict);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
