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

#include "veriscope/service_clients.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "httplib.h"
#include "json_format.hpp"
#include "veriscope/error.hpp"

namespace veriscope {
namespace {

using internal::Json;

constexpr std::string_view kHttpScheme = "http://";

std::string Describe(const ProviderConfig& config) {
  return "provider " + config.endpoint;
}

[[noreturn]] void Violation(const ProviderConfig& config,
                            const std::string& what) {
  Fail(ErrorCode::kContractViolation, Describe(config) + ": " + what);
}

}  // namespace

void ProviderConfig::Validate() const {
  if (endpoint.empty()) Fail(ErrorCode::kUsage, "provider endpoint is empty");
  if (timeout.count() <= 0) {
    Fail(ErrorCode::kUsage, "provider timeout must be > 0 ms");
  }
  if (max_retries < 0 || max_retries > kMaxRetriesLimit) {
    Fail(ErrorCode::kUsage, "provider max_retries must be in [0, 10]");
  }
  if (backoff_base.count() < 0) {
    Fail(ErrorCode::kUsage, "provider backoff_base must be >= 0 ms");
  }
  ParseEndpoint(endpoint);
}

void GenerationRequest::Validate() const {
  if (prompt.empty()) Fail(ErrorCode::kUsage, "generation prompt is empty");
  if (max_tokens <= 0) Fail(ErrorCode::kUsage, "max_tokens must be positive");
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    Fail(ErrorCode::kUsage, "temperature must be a finite value >= 0");
  }
}

EndpointUrl ParseEndpoint(const std::string& endpoint) {
  if (endpoint.rfind(kHttpScheme, 0) != 0) {
    Fail(ErrorCode::kUsage,
         "unsupported endpoint (expected http://host[:port][/path]): " +
             endpoint);
  }
  const std::size_t host_begin = kHttpScheme.size();
  const std::size_t slash = endpoint.find('/', host_begin);
  const std::string authority =
      endpoint.substr(host_begin, slash == std::string::npos
                                      ? std::string::npos
                                      : slash - host_begin);
  if (authority.empty() || authority.front() == ':') {
    Fail(ErrorCode::kUsage, "endpoint has no host: " + endpoint);
  }
  EndpointUrl url;
  url.origin = std::string(kHttpScheme) + authority;
  url.path = slash == std::string::npos ? "/" : endpoint.substr(slash);
  return url;
}

ClientMetricsSnapshot ClientMetrics::Snapshot() const {
  return {calls_.load(std::memory_order_relaxed),
          attempts_.load(std::memory_order_relaxed),
          retries_.load(std::memory_order_relaxed),
          failures_.load(std::memory_order_relaxed)};
}

std::string PostJsonWithRetry(const ProviderConfig& config,
                              const std::string& body,
                              ClientMetrics& metrics) {
  config.Validate();
  const EndpointUrl url = ParseEndpoint(config.endpoint);
  metrics.OnCall();

  httplib::Client client(url.origin);
  client.set_connection_timeout(config.timeout);
  client.set_read_timeout(config.timeout);
  client.set_write_timeout(config.timeout);
  httplib::Headers headers;
  if (config.bearer_token && !config.bearer_token->empty()) {
    headers.emplace("Authorization", "Bearer " + *config.bearer_token);
  }

  std::string last_error;
  for (int attempt = 0;; ++attempt) {
    metrics.OnAttempt();
    auto response = client.Post(url.path, headers, body, "application/json");
    if (response) {
      if (response->status == 200) return response->body;
      if (response->status != 429 && response->status < 500) {
        metrics.OnFailure();
        Fail(ErrorCode::kContractViolation,
             Describe(config) + " answered HTTP " +
                 std::to_string(response->status));
      }
      last_error = "HTTP " + std::to_string(response->status);
    } else {
      last_error = httplib::to_string(response.error());
    }
    if (attempt >= config.max_retries) break;
    metrics.OnRetry();
    std::this_thread::sleep_for(config.backoff_base * (1LL << attempt));
  }
  metrics.OnFailure();
  Fail(ErrorCode::kProviderUnavailable,
       Describe(config) + " unavailable after " +
           std::to_string(config.max_retries + 1) +
           " attempt(s): " + last_error);
}

EmbeddingClient::EmbeddingClient(ProviderConfig config,
                                 std::size_t expected_dim)
    : config_(std::move(config)), expected_dim_(expected_dim) {
  config_.Validate();
}

std::vector<Embedding> EmbeddingClient::EmbedBatch(
    std::span<const std::string> texts) const {
  if (texts.empty()) Fail(ErrorCode::kUsage, "embed_remote: no texts");
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (std::size_t begin = 0; begin < texts.size(); begin += kRequestBatch) {
    auto chunk = EmbedChunk(texts.subspan(
        begin, std::min(kRequestBatch, texts.size() - begin)));
    if (!out.empty() && chunk.front().dim() != out.front().dim()) {
      Fail(ErrorCode::kContractViolation,
           Describe(config_) + ": embeddings have mixed dimensions");
    }
    for (auto& e : chunk) out.push_back(std::move(e));
  }
  return out;
}

std::vector<Embedding> EmbeddingClient::EmbedChunk(
    std::span<const std::string> texts) const {
  Json request = {{"texts", Json::array()}};
  for (const auto& text : texts) request["texts"].push_back(text);
  const std::string body = PostJsonWithRetry(
      config_, request.dump(-1, ' ', false, Json::error_handler_t::replace),
      metrics_);

  Json response;
  try {
    response = Json::parse(body);
  } catch (const Json::parse_error&) {
    Violation(config_, "response is not JSON");
  }
  if (!response.is_object() || !response.contains("embeddings") ||
      !response["embeddings"].is_array()) {
    Violation(config_, "response lacks an \"embeddings\" array");
  }
  const Json& rows = response["embeddings"];
  if (rows.size() != texts.size()) {
    Violation(config_, "expected " + std::to_string(texts.size()) +
              " embeddings, got " + std::to_string(rows.size()));
  }
  std::vector<Embedding> out;
  out.reserve(rows.size());
  std::size_t dim = 0;
  for (const Json& row : rows) {
    if (!row.is_array() || row.empty()) Violation(config_, "embedding is not a vector");
    if (dim == 0) dim = row.size();
    if (row.size() != dim) Violation(config_, "embeddings have mixed dimensions");
    std::vector<double> values;
    values.reserve(row.size());
    for (const Json& v : row) {
      if (!v.is_number()) Violation(config_, "embedding entry is not a number");
      values.push_back(v.get<double>());
    }
    out.emplace_back(std::move(values));
  }
  if (response.contains("dim")) {
    const Json& reported = response["dim"];
    if (!reported.is_number_integer() ||
        reported.get<long long>() != static_cast<long long>(dim)) {
      Violation(config_, "reported dim disagrees with the vectors");
    }
  }
  if (expected_dim_ != 0 && dim != expected_dim_) {
    Violation(config_, "expected dim " + std::to_string(expected_dim_) + ", got " +
              std::to_string(dim));
  }
  return out;
}

GenerationClient::GenerationClient(ProviderConfig config)
    : config_(std::move(config)) {
  config_.Validate();
}

std::string GenerationClient::Generate(const GenerationRequest& request) const {
  request.Validate();
  const Json payload = {{"prompt", request.prompt},
                        {"max_tokens", request.max_tokens},
                        {"temperature", request.temperature}};
  const std::string body = PostJsonWithRetry(
      config_, payload.dump(-1, ' ', false, Json::error_handler_t::replace),
      metrics_);
  Json response;
  try {
    response = Json::parse(body);
  } catch (const Json::parse_error&) {
    Fail(ErrorCode::kContractViolation,
         Describe(config_) + ": response is not JSON");
  }
  if (!response.is_object() || !response.contains("text") ||
      !response["text"].is_string()) {
    Fail(ErrorCode::kContractViolation,
         Describe(config_) + ": response lacks a \"text\" string");
  }
  return response["text"].get<std::string>();
}

}  // namespace veriscope
