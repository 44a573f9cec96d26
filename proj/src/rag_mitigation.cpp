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

#include "veriscope/rag_mitigation.hpp"

#include <algorithm>
#include <unordered_set>

#include "veriscope/error.hpp"

namespace veriscope {
namespace {

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

// Evidence is spliced in as one sentence, so trailing terminators go.
std::string_view TrimEvidence(std::string_view s) {
  s = Trim(s);
  while (!s.empty() && (IsTerminator(s.back()) || IsSpace(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> ClaimTexts(const VerificationResult& result) {
  std::vector<std::string> texts;
  texts.reserve(result.claims.size());
  for (const auto& claim : result.claims) texts.push_back(claim.text);
  return texts;
}

}  // namespace

std::size_t VerificationResult::GroundedCount() const {
  return static_cast<std::size_t>(
      std::count_if(claims.begin(), claims.end(),
                    [](const Claim& c) { return c.grounded; }));
}

void VerifyOptions::Validate() const {
  if (k == 0) Fail(ErrorCode::kUsage, "evidence k must be >= 1");
  if (!(tau_g >= 0.0 && tau_g <= 1.0)) {
    Fail(ErrorCode::kUsage, "grounding threshold must be in [0, 1]");
  }
}

void MitigationOptions::Validate() const {
  verify.Validate();
  if (max_iter == 0) Fail(ErrorCode::kUsage, "max_iter must be >= 1");
}

std::vector<std::string> SplitClaims(std::string_view caption) {
  std::vector<std::string> claims;
  std::size_t begin = 0;
  for (std::size_t i = 0; i <= caption.size(); ++i) {
    if (i == caption.size() || IsTerminator(caption[i])) {
      const auto piece = Trim(caption.substr(begin, i - begin));
      if (!piece.empty()) claims.emplace_back(piece);
      begin = i + 1;
    }
  }
  return claims;
}

std::string JoinClaims(std::span<const std::string> claims) {
  std::string out;
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (i > 0) out += ". ";
    out += claims[i];
  }
  if (!claims.empty()) out += '.';
  return out;
}

VerificationResult Verify(std::string_view caption,
                          const SessionKnowledgeBase& kb,
                          const Embedder& embedder,
                          const VerifyOptions& options) {
  options.Validate();
  if (kb.TextEntryCount() == 0) {
    Fail(ErrorCode::kVerificationImpossible,
         "knowledge base " + kb.video_id() + " has no text-bearing entries");
  }
  VerificationResult result;
  result.caption = std::string(caption);
  result.evidence_k = options.k;

  const auto texts = SplitClaims(caption);
  if (texts.empty()) {
    result.grounded_fraction = 1.0;
    return result;
  }
  const auto vectors = embedder.EmbedBatch(texts);
  std::size_t grounded = 0;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    Claim claim;
    claim.index = i;
    claim.text = texts[i];
    const auto hits = kb.SearchTextEntries(vectors[i], options.k);
    // Hits are sorted, so the first one carries the maximum support.
    claim.best_evidence = hits.front();
    claim.support = hits.front().score;
    claim.grounded = claim.support >= options.tau_g;
    if (claim.grounded) ++grounded;
    result.claims.push_back(std::move(claim));
  }
  result.grounded_fraction =
      static_cast<double>(grounded) / static_cast<double>(texts.size());
  return result;
}

std::string ReviseStub(const VerificationResult& result,
                       const SessionKnowledgeBase& kb) {
  std::vector<std::string> kept;
  kept.reserve(result.claims.size());
  for (const auto& claim : result.claims) {
    if (claim.grounded) {
      kept.push_back(claim.text);
    } else if (claim.best_evidence) {
      const auto evidence =
          TrimEvidence(kb.entry(claim.best_evidence->index).text);
      if (!evidence.empty()) kept.emplace_back(evidence);
    }
  }
  return JoinClaims(kept);
}

std::string BuildRevisionPrompt(const VerificationResult& result,
                                const SessionKnowledgeBase& kb) {
  std::string unsupported;
  std::string evidence;
  std::unordered_set<std::size_t> cited;
  for (const auto& claim : result.claims) {
    if (claim.grounded) continue;
    if (!unsupported.empty()) unsupported += '\n';
    unsupported += claim.text;
    if (claim.best_evidence && cited.insert(claim.best_evidence->index).second) {
      if (!evidence.empty()) evidence += '\n';
      evidence += kb.entry(claim.best_evidence->index).text;
    }
  }
  return "Revise the caption so every sentence is supported by the "
         "evidence.\nCaption: " +
         result.caption + "\nUnsupported sentences:\n" + unsupported +
         "\nEvidence:\n" + evidence + "\nRevised caption:";
}

RevisionStep ReviseLlm(const VerificationResult& result,
                       const SessionKnowledgeBase& kb,
                       const GenerationClient& client, int max_tokens) {
  if (result.FullyGrounded()) {
    return {JoinClaims(ClaimTexts(result)), false, {}};
  }
  auto fallback = [&](std::string reason) {
    return RevisionStep{ReviseStub(result, kb), true, std::move(reason)};
  };
  try {
    GenerationRequest request;
    request.prompt = BuildRevisionPrompt(result, kb);
    request.max_tokens = max_tokens;
    request.temperature = 0.0;
    const std::string completion(Trim(client.Generate(request)));
    if (completion.empty()) return fallback("empty completion");
    return {completion, false, {}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kProviderUnavailable &&
        e.code() != ErrorCode::kContractViolation) {
      throw;
    }
    return fallback(e.what());
  }
}

RevisionStep StubReviser::Revise(const VerificationResult& result,
                                 const SessionKnowledgeBase& kb) const {
  return {ReviseStub(result, kb), false, {}};
}

LlmReviser::LlmReviser(ProviderConfig config, int max_tokens)
    : client_(std::move(config)), max_tokens_(max_tokens) {
  if (max_tokens_ <= 0) Fail(ErrorCode::kUsage, "max_tokens must be positive");
}

RevisionStep LlmReviser::Revise(const VerificationResult& result,
                                const SessionKnowledgeBase& kb) const {
  return ReviseLlm(result, kb, client_, max_tokens_);
}

RevisionOutcome Mitigate(std::string_view caption,
                         const SessionKnowledgeBase& kb,
                         const Embedder& embedder, const Reviser& reviser,
                         const MitigationOptions& options) {
  options.Validate();
  RevisionOutcome outcome;
  outcome.original = std::string(caption);
  std::string current = outcome.original;
  VerificationResult result = Verify(current, kb, embedder, options.verify);
  outcome.initial = result;

  std::size_t rounds = 1;
  std::size_t passes = 1;
  while (!result.FullyGrounded()) {
    RevisionStep step = reviser.Revise(result, kb);
    ++outcome.revisions;
    if (step.fallback) {
      outcome.fallback = true;
      outcome.fallback_reason = step.fallback_reason;
    }
    if (step.text == current) break;
    current = std::move(step.text);
    result = Verify(current, kb, embedder, options.verify);
    ++passes;
    if (rounds == options.max_iter) break;
    ++rounds;
  }

  outcome.revised = current;
  outcome.iterations = rounds;
  outcome.verify_passes = passes;
  outcome.final = std::move(result);
  outcome.changed = outcome.revised != outcome.original;
  return outcome;
}

}  // namespace veriscope
