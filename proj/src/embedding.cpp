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

#include "veriscope/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "veriscope/error.hpp"
#include "veriscope/service_clients.hpp"

namespace veriscope {
namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;
constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one codepoint at `pos`; malformed input yields kInvalid and a
// length of one byte.
char32_t DecodeUtf8(std::string_view s, std::size_t pos, std::size_t& len) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  len = 1;
  if (b0 < 0x80) return b0;
  std::size_t need;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    need = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    need = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    need = 3;
    cp = b0 & 0x07;
  } else {
    return kInvalid;
  }
  if (pos + need >= s.size()) return kInvalid;
  for (std::size_t i = 1; i <= need; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return kInvalid;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[need] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return kInvalid;
  }
  len = need + 1;
  return cp;
}

void EncodeUtf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool InRange(char32_t cp, char32_t lo, char32_t hi) {
  return cp >= lo && cp <= hi;
}

bool IsAlphanumeric(char32_t cp) {
  if (cp == kInvalid) return false;
  if (cp < 0x80) {
    return InRange(cp, '0', '9') || InRange(cp, 'a', 'z') ||
           InRange(cp, 'A', 'Z');
  }
  if (InRange(cp, 0x80, 0xBF)) {
    // Latin-1 controls, punctuation and symbols; keep the letter and digit
    // forms that live there.
    switch (cp) {
      case 0xAA: case 0xB2: case 0xB3: case 0xB5: case 0xB9: case 0xBA:
      case 0xBC: case 0xBD: case 0xBE:
        return true;
      default:
        return false;
    }
  }
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (InRange(cp, 0x2000, 0x206F)) return false;  // general punctuation
  if (InRange(cp, 0x2190, 0x2BFF)) return false;  // arrows, math, symbols
  if (InRange(cp, 0x2E00, 0x2E7F)) return false;  // supplemental punct.
  if (InRange(cp, 0x3000, 0x3004) || InRange(cp, 0x3008, 0x303F)) {
    return false;  // CJK punctuation
  }
  if (InRange(cp, 0xFE30, 0xFE6F)) return false;  // compat and small forms
  if (cp == 0xFEFF) return false;
  if (InRange(cp, 0xFF01, 0xFF0F) || InRange(cp, 0xFF1A, 0xFF20) ||
      InRange(cp, 0xFF3B, 0xFF40) || InRange(cp, 0xFF5B, 0xFF65)) {
    return false;  // fullwidth punctuation
  }
  if (InRange(cp, 0x1F000, 0x1FAFF)) return false;  // emoji and pictographs
  return true;
}

char32_t ToLower(char32_t cp) {
  if (InRange(cp, 'A', 'Z')) return cp + 0x20;
  if (InRange(cp, 0xC0, 0xDE) && cp != 0xD7) return cp + 0x20;
  return cp;
}

}  // namespace

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) Fail(ErrorCode::kUsage, "embedding dimension must be >= 1");
  for (double v : values_) {
    if (!std::isfinite(v)) {
      Fail(ErrorCode::kUsage, "embedding entries must be finite");
    }
  }
}

Embedding Embedding::Zero(std::size_t dim) {
  return Embedding(std::vector<double>(dim, 0.0));
}

double Embedding::Norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

bool Embedding::IsZero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

Embedding Embedding::Scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return Embedding(std::move(out));
}

void EmbedderSpec::Validate() const {
  if (dim == 0) Fail(ErrorCode::kUsage, "embedder dim must be >= 1");
  if (kind == EmbedderKind::kRemote && (!endpoint || endpoint->empty())) {
    Fail(ErrorCode::kUsage, "remote embedder requires an endpoint");
  }
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  Token current;
  bool open = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = 1;
    const char32_t cp = DecodeUtf8(text, pos, len);
    if (IsAlphanumeric(cp)) {
      if (!open) {
        current = Token{{}, pos, pos};
        open = true;
      }
      EncodeUtf8(ToLower(cp), current.text);
      current.end = pos + len;
    } else if (open) {
      tokens.push_back(std::move(current));
      open = false;
    }
    pos += len;
  }
  if (open) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> TokenStrings(std::string_view text) {
  std::vector<std::string> out;
  for (auto& token : Tokenize(text)) out.push_back(std::move(token.text));
  return out;
}

std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t hash = kFnvOffset;
  for (char c : data) {
    hash ^= static_cast<unsigned char>(c);
    hash *= kFnvPrime;
  }
  return hash;
}

Embedding HashEmbed(std::string_view text, std::size_t dim) {
  if (dim == 0) Fail(ErrorCode::kUsage, "embedder dim must be >= 1");
  std::vector<double> buckets(dim, 0.0);
  bool any = false;
  for (const Token& token : Tokenize(text)) {
    const std::uint64_t hash = Fnv1a64(token.text);
    const double sign = ((hash >> 8) & 1U) == 0 ? 1.0 : -1.0;
    buckets[hash % dim] += sign;
    any = true;
  }
  if (any) {
    double sum = 0.0;
    for (double v : buckets) sum += v * v;
    // Signed collisions can cancel to an all-zero vector; keep it zero.
    if (sum > 0.0) {
      const double norm = std::sqrt(sum);
      for (double& v : buckets) v /= norm;
    }
  }
  return Embedding(std::move(buckets));
}

double Cosine(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim()) {
    Fail(ErrorCode::kUsage, "cosine: dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  }
  double dot = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  const double denom = std::sqrt(aa) * std::sqrt(bb);
  return std::clamp(dot / denom, -1.0, 1.0);
}

Embedding Embedder::Embed(std::string_view text) const {
  const std::string owned(text);
  auto out = EmbedBatch(std::span<const std::string>(&owned, 1));
  return std::move(out.front());
}

HashEmbedder::HashEmbedder(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) Fail(ErrorCode::kUsage, "embedder dim must be >= 1");
}

std::vector<Embedding> HashEmbedder::EmbedBatch(
    std::span<const std::string> texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& text : texts) out.push_back(HashEmbed(text, dim_));
  return out;
}

std::unique_ptr<Embedder> MakeEmbedder(const EmbedderSpec& spec,
                                       const ProviderConfig* provider) {
  spec.Validate();
  if (spec.kind == EmbedderKind::kDeterministicHash) {
    return std::make_unique<HashEmbedder>(spec.dim);
  }
  ProviderConfig config = provider ? *provider : ProviderConfig{};
  config.endpoint = *spec.endpoint;
  return std::make_unique<EmbeddingClient>(std::move(config), spec.dim);
}

Embedding EmbedText(std::string_view text, const EmbedderSpec& spec) {
  return MakeEmbedder(spec)->Embed(text);
}

}  // namespace veriscope
