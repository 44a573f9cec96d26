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

#ifndef VERISCOPE_EMBEDDING_HPP_
#define VERISCOPE_EMBEDDING_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace veriscope {

struct ProviderConfig;

// Fixed-dimension real vector. All entries are finite; the dimension is the
// length of the value vector and is always at least one.
class Embedding {
 public:
  explicit Embedding(std::vector<double> values);
  static Embedding Zero(std::size_t dim);

  std::size_t dim() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double Norm() const;
  bool IsZero() const;
  Embedding Scaled(double factor) const;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<double> values_;
};

enum class EmbedderKind { kDeterministicHash, kRemote };

inline constexpr std::size_t kDefaultEmbeddingDim = 256;

struct EmbedderSpec {
  EmbedderKind kind = EmbedderKind::kDeterministicHash;
  std::size_t dim = kDefaultEmbeddingDim;
  std::optional<std::string> endpoint;  // remote only

  // Throws kUsage when dim is zero or a remote spec lacks an endpoint.
  void Validate() const;
};

// Token with its byte span in the source text. `text` is lowercased.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Lowercases and splits on every non-alphanumeric codepoint. ASCII letters
// and digits are alphanumeric; non-ASCII codepoints are alphanumeric unless
// they fall in a Unicode space or punctuation block. Lowercasing covers ASCII
// and the Latin-1 uppercase range. Malformed UTF-8 bytes act as separators.
std::vector<Token> Tokenize(std::string_view text);
std::vector<std::string> TokenStrings(std::string_view text);

// 64-bit FNV-1a over the bytes of `data`.
std::uint64_t Fnv1a64(std::string_view data);

// Signed feature-hashing bag-of-words embedder. Each token adds +1 or -1
// (bit 8 of its hash) to bucket hash % dim; the sum is L2-normalized, or left
// all-zero when the text has no tokens.
Embedding HashEmbed(std::string_view text, std::size_t dim);

// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Returns exactly 0.0 when either
// vector has zero norm. Throws kUsage on dimension mismatch.
double Cosine(const Embedding& a, const Embedding& b);

// Provider abstraction. Implementations must preserve input order.
class Embedder {
 public:
  virtual ~Embedder() = default;

  virtual std::size_t dim() const = 0;
  virtual std::vector<Embedding> EmbedBatch(
      std::span<const std::string> texts) const = 0;

  Embedding Embed(std::string_view text) const;
};

class HashEmbedder final : public Embedder {
 public:
  explicit HashEmbedder(std::size_t dim = kDefaultEmbeddingDim);

  std::size_t dim() const override { return dim_; }
  std::vector<Embedding> EmbedBatch(
      std::span<const std::string> texts) const override;

 private:
  std::size_t dim_;
};

// Builds the embedder described by `spec`. For the remote kind, `provider`
// supplies timeouts and retries; its endpoint is overridden by spec.endpoint.
std::unique_ptr<Embedder> MakeEmbedder(const EmbedderSpec& spec,
                                       const ProviderConfig* provider = nullptr);

// Single-text convenience over MakeEmbedder.
Embedding EmbedText(std::string_view text, const EmbedderSpec& spec);

}  // namespace veriscope

#endif  // VERISCOPE_EMBEDDING_HPP_
