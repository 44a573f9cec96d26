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

#include "run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace veriscope::cli {
namespace {

using Json = nlohmann::json;

constexpr const char* kEnvEmbedEndpoint = "VERISCOPE_EMBED_ENDPOINT";
constexpr const char* kEnvGenEndpoint = "VERISCOPE_GEN_ENDPOINT";
constexpr const char* kEnvTimeoutMs = "VERISCOPE_TIMEOUT_MS";

template <typename T>
void Take(const Json& doc, const char* key, T& target) {
  if (doc.contains(key) && !doc[key].is_null()) target = doc[key].get<T>();
}

void TakeProvider(const Json& doc, ProviderSettings& provider) {
  if (!doc.is_object()) return;
  Take(doc, "endpoint", provider.endpoint);
  Take(doc, "timeout_ms", provider.timeout_ms);
  Take(doc, "max_retries", provider.max_retries);
  Take(doc, "backoff_base_ms", provider.backoff_base_ms);
  Take(doc, "bearer_token", provider.bearer_token);
}

void ApplyConfigFile(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
    if (!doc.is_object()) throw std::invalid_argument("not an object");
    if (doc.contains("embedder")) {
      const Json& embedder = doc["embedder"];
      if (embedder.is_string()) {
        config.embedder = embedder.get<std::string>();
      } else {
        Take(embedder, "kind", config.embedder);
        Take(embedder, "dim", config.dim);
        Take(embedder, "endpoint", config.embedding.endpoint);
      }
    }
    Take(doc, "dim", config.dim);
    Take(doc, "threshold", config.threshold);
    Take(doc, "tau_g", config.tau_g);
    Take(doc, "k", config.k);
    Take(doc, "max_iter", config.max_iter);
    Take(doc, "reviser", config.reviser);
    Take(doc, "strict", config.strict);
    Take(doc, "seed", config.seed);
    if (doc.contains("format")) {
      config.format = ParseFormats(doc["format"].get<std::string>());
    }
    if (doc.contains("providers")) {
      const Json& providers = doc["providers"];
      if (providers.contains("embedding")) {
        TakeProvider(providers["embedding"], config.embedding);
      }
      if (providers.contains("generation")) {
        TakeProvider(providers["generation"], config.generation);
      }
    }
    if (doc.contains("paths")) {
      const Json& paths = doc["paths"];
      Take(paths, "captions", config.captions);
      Take(paths, "predictions", config.predictions);
      Take(paths, "corpus", config.corpus);
      Take(paths, "qa", config.qa);
      Take(paths, "answers", config.answers);
      Take(paths, "kb_dir", config.kb_dir);
      Take(paths, "out", config.out);
    }
  } catch (const Json::exception& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
}

void ApplyEnvironment(RunConfig& config) {
  if (const char* v = std::getenv(kEnvEmbedEndpoint); v && *v) {
    config.embedding.endpoint = v;
  }
  if (const char* v = std::getenv(kEnvGenEndpoint); v && *v) {
    config.generation.endpoint = v;
  }
  if (const char* v = std::getenv(kEnvTimeoutMs); v && *v) {
    char* end = nullptr;
    const long long ms = std::strtoll(v, &end, 10);
    if (end == v || *end != '\0' || ms <= 0) {
      throw std::invalid_argument(std::string(kEnvTimeoutMs) +
                                  " must be a positive integer");
    }
    config.embedding.timeout_ms = ms;
    config.generation.timeout_ms = ms;
  }
}

template <typename T>
void Override(const std::optional<T>& flag, T& target) {
  if (flag) target = *flag;
}

void Check(const RunConfig& config) {
  if (config.embedder != "hash" && config.embedder != "remote") {
    throw std::invalid_argument("--embedder must be hash or remote");
  }
  if (config.reviser != "stub" && config.reviser != "llm") {
    throw std::invalid_argument("--reviser must be stub or llm");
  }
  if (config.dim == 0) throw std::invalid_argument("--dim must be >= 1");
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) {
    throw std::invalid_argument("--threshold must be in [0, 1]");
  }
  if (!(config.tau_g >= 0.0 && config.tau_g <= 1.0)) {
    throw std::invalid_argument("--tau-g must be in [0, 1]");
  }
  if (config.k == 0) throw std::invalid_argument("--k must be >= 1");
  if (config.max_iter == 0) {
    throw std::invalid_argument("--max-iter must be >= 1");
  }
}

}  // namespace

OutputFormats ParseFormats(const std::string& name) {
  if (name == "json") return OutputFormats::kJson;
  if (name == "csv") return OutputFormats::kCsv;
  if (name == "both") return OutputFormats::kBoth;
  throw std::invalid_argument("--format must be json, csv or both");
}

RunConfig ResolveConfig(const FlagValues& flags) {
  RunConfig config;
  if (flags.config_path) ApplyConfigFile(*flags.config_path, config);
  ApplyEnvironment(config);

  Override(flags.embedder, config.embedder);
  Override(flags.dim, config.dim);
  Override(flags.threshold, config.threshold);
  Override(flags.tau_g, config.tau_g);
  Override(flags.k, config.k);
  Override(flags.max_iter, config.max_iter);
  Override(flags.embed_endpoint, config.embedding.endpoint);
  Override(flags.gen_endpoint, config.generation.endpoint);
  if (flags.timeout_ms) {
    config.embedding.timeout_ms = config.generation.timeout_ms =
        *flags.timeout_ms;
  }
  if (flags.max_retries) {
    config.embedding.max_retries = config.generation.max_retries =
        *flags.max_retries;
  }
  if (flags.backoff_ms) {
    config.embedding.backoff_base_ms = config.generation.backoff_base_ms =
        *flags.backoff_ms;
  }
  if (flags.bearer_token) {
    config.embedding.bearer_token = config.generation.bearer_token =
        *flags.bearer_token;
  }
  Override(flags.reviser, config.reviser);
  if (flags.format) config.format = ParseFormats(*flags.format);
  Override(flags.strict, config.strict);
  Override(flags.seed, config.seed);
  Override(flags.captions, config.captions);
  Override(flags.predictions, config.predictions);
  Override(flags.corpus, config.corpus);
  Override(flags.qa, config.qa);
  Override(flags.answers, config.answers);
  Override(flags.kb_dir, config.kb_dir);
  Override(flags.out, config.out);

  Check(config);
  return config;
}

}  // namespace veriscope::cli
