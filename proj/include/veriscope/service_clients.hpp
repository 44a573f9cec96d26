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

#ifndef VERISCOPE_SERVICE_CLIENTS_HPP_
#define VERISCOPE_SERVICE_CLIENTS_HPP_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veriscope/embedding.hpp"

namespace veriscope {

struct ProviderConfig {
  std::string endpoint;  // http://host[:port][/path]
  std::chrono::milliseconds timeout{30000};
  int max_retries = 2;
  std::chrono::milliseconds backoff_base{250};  // doubles after each retry
  std::optional<std::string> bearer_token;

  static constexpr int kMaxRetriesLimit = 10;

  void Validate() const;
};

struct GenerationRequest {
  std::string prompt;
  int max_tokens = 256;
  double temperature = 0.0;

  void Validate() const;
};

// Split form of a provider endpoint as consumed by the HTTP layer.
struct EndpointUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;    // always starts with '/'
};

// Only plain http is supported.
EndpointUrl ParseEndpoint(const std::string& endpoint);

struct ClientMetricsSnapshot {
  std::uint64_t calls = 0;
  std::uint64_t attempts = 0;
  std::uint64_t retries = 0;
  std::uint64_t failures = 0;
};

class ClientMetrics {
 public:
  void OnCall() { calls_.fetch_add(1, std::memory_order_relaxed); }
  void OnAttempt() { attempts_.fetch_add(1, std::memory_order_relaxed); }
  void OnRetry() { retries_.fetch_add(1, std::memory_order_relaxed); }
  void OnFailure() { failures_.fetch_add(1, std::memory_order_relaxed); }

  ClientMetricsSnapshot Snapshot() const;

 private:
  std::atomic<std::uint64_t> calls_{0};
  std::atomic<std::uint64_t> attempts_{0};
  std::atomic<std::uint64_t> retries_{0};
  std::atomic<std::uint64_t> failures_{0};
};

// POSTs a JSON body and returns the parsed 200 response body text. Transport
// errors, timeouts, 429 and 5xx are retried up to max_retries times with
// exponential backoff, then surface as kProviderUnavailable. Any other
// non-200 status is a kContractViolation and is not retried.
std::string PostJsonWithRetry(const ProviderConfig& config,
                              const std::string& body, ClientMetrics& metrics);

// Remote embedding provider.
//   request:  {"texts": [string...]}
//   response: {"embeddings": [[number...]...], "dim": int}
class EmbeddingClient final : public Embedder {
 public:
  // `expected_dim` of zero accepts whatever uniform dimension the server
  // reports; otherwise a different dimension is a contract violation.
  EmbeddingClient(ProviderConfig config, std::size_t expected_dim);

  std::size_t dim() const override { return expected_dim_; }
  std::vector<Embedding> EmbedBatch(
      std::span<const std::string> texts) const override;

  const ProviderConfig& config() const { return config_; }
  ClientMetricsSnapshot metrics() const { return metrics_.Snapshot(); }

  // Texts per HTTP request; larger batches are split and reassembled.
  static constexpr std::size_t kRequestBatch = 64;

 private:
  std::vector<Embedding> EmbedChunk(std::span<const std::string> texts) const;

  ProviderConfig config_;
  std::size_t expected_dim_;
  mutable ClientMetrics metrics_;
};

// Remote text-generation provider.
//   request:  {"prompt": string, "max_tokens": int, "temperature": number}
//   response: {"text": string}
// An empty completion is returned as-is; callers treat it as a failure.
class GenerationClient {
 public:
  explicit GenerationClient(ProviderConfig config);

  std::string Generate(const GenerationRequest& request) const;

  const ProviderConfig& config() const { return config_; }
  ClientMetricsSnapshot metrics() const { return metrics_.Snapshot(); }

 private:
  ProviderConfig config_;
  mutable ClientMetrics metrics_;
};

}  // namespace veriscope

#endif  // VERISCOPE_SERVICE_CLIENTS_HPP_
