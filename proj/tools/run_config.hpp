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

#ifndef VERISCOPE_TOOLS_RUN_CONFIG_HPP_
#define VERISCOPE_TOOLS_RUN_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>

namespace veriscope::cli {

struct ProviderSettings {
  std::string endpoint;
  std::int64_t timeout_ms = 30000;
  int max_retries = 2;
  std::int64_t backoff_base_ms = 250;
  std::string bearer_token;
};

enum class OutputFormats { kJson, kCsv, kBoth };

struct RunConfig {
  std::string embedder = "hash";  // "hash" | "remote"
  std::size_t dim = 256;
  double threshold = 0.5;
  double tau_g = 0.5;
  std::size_t k = 5;
  std::size_t max_iter = 3;
  ProviderSettings embedding;
  ProviderSettings generation;
  std::string reviser = "stub";  // "stub" | "llm"
  OutputFormats format = OutputFormats::kBoth;
  bool strict = false;
  std::uint64_t seed = 42;

  std::string captions;
  std::string predictions;
  std::string corpus;
  std::string qa;
  std::string answers;
  std::string kb_dir;
  std::string out = ".";
};

// Values given on the command line; unset fields defer to lower layers.
struct FlagValues {
  std::optional<std::string> config_path;
  std::optional<std::string> embedder;
  std::optional<std::size_t> dim;
  std::optional<double> threshold;
  std::optional<double> tau_g;
  std::optional<std::size_t> k;
  std::optional<std::size_t> max_iter;
  std::optional<std::string> embed_endpoint;
  std::optional<std::string> gen_endpoint;
  std::optional<std::int64_t> timeout_ms;
  std::optional<int> max_retries;
  std::optional<std::int64_t> backoff_ms;
  std::optional<std::string> bearer_token;
  std::optional<std::string> reviser;
  std::optional<std::string> format;
  std::optional<bool> strict;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> captions;
  std::optional<std::string> predictions;
  std::optional<std::string> corpus;
  std::optional<std::string> qa;
  std::optional<std::string> answers;
  std::optional<std::string> kb_dir;
  std::optional<std::string> out;
};

// Layers defaults < config file < environment < flags. Throws
// std::invalid_argument with a readable message on bad values.
RunConfig ResolveConfig(const FlagValues& flags);

OutputFormats ParseFormats(const std::string& name);

}  // namespace veriscope::cli

#endif  // VERISCOPE_TOOLS_RUN_CONFIG_HPP_
