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

#ifndef VERISCOPE_RAG_MITIGATION_HPP_
#define VERISCOPE_RAG_MITIGATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "veriscope/embedding.hpp"
#include "veriscope/knowledge_base.hpp"
#include "veriscope/service_clients.hpp"

namespace veriscope {

inline constexpr double kDefaultGroundingThreshold = 0.5;
inline constexpr std::size_t kDefaultEvidenceK = 5;
inline constexpr std::size_t kDefaultMaxIterations = 3;
inline constexpr int kDefaultRevisionMaxTokens = 256;

struct Claim {
  std::size_t index = 0;
  std::string text;
  bool grounded = false;
  std::optional<SearchHit> best_evidence;
  double support = 0.0;  // best cosine among retrieved text-bearing entries
};

struct VerificationResult {
  std::string caption;
  std::vector<Claim> claims;
  double grounded_fraction = 1.0;  // vacuously 1 when there are no claims
  std::size_t evidence_k = kDefaultEvidenceK;

  std::size_t GroundedCount() const;
  bool FullyGrounded() const { return GroundedCount() == claims.size(); }
};

struct VerifyOptions {
  std::size_t k = kDefaultEvidenceK;
  double tau_g = kDefaultGroundingThreshold;

  void Validate() const;
};

// Sentence-level claims: split on '.', '!' and '?', trim, drop empties.
std::vector<std::string> SplitClaims(std::string_view caption);

// Inverse normal form: "a. b." for {"a", "b"}, "" for no claims.
std::string JoinClaims(std::span<const std::string> claims);

// Grounds every claim against the text-bearing entries of `kb`. Throws
// kVerificationImpossible when the knowledge base has no such entries.
VerificationResult Verify(std::string_view caption,
                          const SessionKnowledgeBase& kb,
                          const Embedder& embedder,
                          const VerifyOptions& options = {});

// Replaces each ungrounded claim with its best evidence text and drops
// ungrounded claims that have none; grounded claims pass through.
std::string ReviseStub(const VerificationResult& result,
                       const SessionKnowledgeBase& kb);

// Prompt sent to the remote reviser, fixed format:
//   Revise the caption so every sentence is supported by the evidence.
//   Caption: <caption>
//   Unsupported sentences:
//   <one per line>
//   Evidence:
//   <one text per line>
//   Revised caption:
std::string BuildRevisionPrompt(const VerificationResult& result,
                                const SessionKnowledgeBase& kb);

struct RevisionStep {
  std::string text;
  bool fallback = false;        // remote reviser failed, stub output used
  std::string fallback_reason;
};

// Sends the revision prompt through `client`. Empty completions and
// provider-unavailable errors fall back to ReviseStub. Fully grounded
// results short-circuit to the normalized caption without a remote call.
RevisionStep ReviseLlm(const VerificationResult& result,
                       const SessionKnowledgeBase& kb,
                       const GenerationClient& client,
                       int max_tokens = kDefaultRevisionMaxTokens);

class Reviser {
 public:
  virtual ~Reviser() = default;
  virtual RevisionStep Revise(const VerificationResult& result,
                              const SessionKnowledgeBase& kb) const = 0;
};

class StubReviser final : public Reviser {
 public:
  RevisionStep Revise(const VerificationResult& result,
                      const SessionKnowledgeBase& kb) const override;
};

class LlmReviser final : public Reviser {
 public:
  explicit LlmReviser(ProviderConfig config,
                      int max_tokens = kDefaultRevisionMaxTokens);

  RevisionStep Revise(const VerificationResult& result,
                      const SessionKnowledgeBase& kb) const override;

  const GenerationClient& client() const { return client_; }

 private:
  GenerationClient client_;
  int max_tokens_;
};

struct MitigationOptions {
  VerifyOptions verify;
  std::size_t max_iter = kDefaultMaxIterations;

  void Validate() const;
};

struct RevisionOutcome {
  std::string original;
  std::string revised;
  std::size_t iterations = 1;     // verify-then-revise rounds, <= max_iter
  std::size_t verify_passes = 1;  // <= max_iter + 1
  std::size_t revisions = 0;
  VerificationResult initial;
  VerificationResult final;
  bool changed = false;
  bool fallback = false;  // any round fell back to the stub reviser
  std::string fallback_reason;
};

// verify -> stop when fully grounded -> revise, for at most max_iter rounds.
// When the budget runs out right after a revision, one closing verify pass
// scores the last revision. A revision that reproduces its input ends the
// loop early since every reviser here is deterministic at temperature 0.
RevisionOutcome Mitigate(std::string_view caption,
                         const SessionKnowledgeBase& kb,
                         const Embedder& embedder, const Reviser& reviser,
                         const MitigationOptions& options = {});

}  // namespace veriscope

#endif  // VERISCOPE_RAG_MITIGATION_HPP_
