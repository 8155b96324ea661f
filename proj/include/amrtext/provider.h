// Copyright 2026 The AMRText Authors.
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

#ifndef AMRTEXT_PROVIDER_H_
#define AMRTEXT_PROVIDER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace amrtext {

using TokenId = std::int32_t;

// Finite token inventory. Ids are dense and follow insertion order.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(const std::vector<std::string> &tokens);

  // Returns the id of `token`, adding it if new.
  TokenId Add(const std::string &token);
  bool Contains(const std::string &token) const;
  // Throws Error("unknown-token") for tokens outside the vocabulary.
  TokenId Id(const std::string &token) const;
  const std::string &Token(TokenId id) const { return tokens_.at(id); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string> &tokens() const { return tokens_; }

  std::vector<TokenId> Encode(const std::vector<std::string> &tokens) const;
  std::vector<std::string> Decode(std::span<const TokenId> ids) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

// Conditional next-token distribution p(. | context) over a fixed
// vocabulary. Implementations must be deterministic and safe for concurrent
// const calls. The returned vector has one entry per vocabulary id.
class TokenDistributionProvider {
 public:
  virtual ~TokenDistributionProvider() = default;
  virtual const Vocabulary &vocabulary() const = 0;
  virtual std::vector<double> NextDistribution(
      std::span<const TokenId> context) const = 0;

  // Log-probability shared by every token in every context, for providers
  // where it is known in closed form. Scoring uses it instead of taking the
  // log of a rounded probability.
  virtual std::optional<long double> ConstantLogProbability() const {
    return std::nullopt;
  }
};

// Throws Error("normalization") unless `probabilities` has one nonnegative
// entry per vocabulary token and sums to 1 within 1e-9.
void CheckDistribution(const std::vector<double> &probabilities,
                       std::size_t vocabulary_size);

// Same probability for every token regardless of context.
class UniformProvider : public TokenDistributionProvider {
 public:
  explicit UniformProvider(Vocabulary vocabulary)
      : vocabulary_(std::move(vocabulary)) {}
  const Vocabulary &vocabulary() const override { return vocabulary_; }
  std::vector<double> NextDistribution(
      std::span<const TokenId> context) const override;
  std::optional<long double> ConstantLogProbability() const override;

 private:
  Vocabulary vocabulary_;
};

// Explicit probability table keyed by context suffix; the longest suffix
// with an entry wins. Text format, one directive per line:
//
//   # comment
//   vocab a b c </s>
//   ctx => a=0.5 b=0.5          (empty suffix: the fallback row)
//   ctx a b => c=1
//
// Tokens missing from a row get probability zero. A context with no
// matching row (and no fallback) is an error.
class TableProvider : public TokenDistributionProvider {
 public:
  static std::unique_ptr<TableProvider> FromText(const std::string &text);
  static std::unique_ptr<TableProvider> FromFile(const std::string &path);

  TableProvider(Vocabulary vocabulary,
                std::map<std::vector<TokenId>, std::vector<double>> rows);

  const Vocabulary &vocabulary() const override { return vocabulary_; }
  std::vector<double> NextDistribution(
      std::span<const TokenId> context) const override;

 private:
  Vocabulary vocabulary_;
  std::map<std::vector<TokenId>, std::vector<double>> rows_;
  std::size_t longest_suffix_ = 0;
};

// Additively smoothed n-gram model trained on whitespace-tokenized lines.
// Each line is followed by the end token. The history is the last order-1
// context tokens; shorter contexts use what is available.
class NgramProvider : public TokenDistributionProvider {
 public:
  static std::unique_ptr<NgramProvider> Train(
      const std::vector<std::vector<std::string>> &sentences, int order,
      double add_k, const std::string &end_token,
      const std::vector<std::string> &extra_tokens = {});
  static std::unique_ptr<NgramProvider> FromFile(
      const std::string &path, int order, double add_k,
      const std::string &end_token,
      const std::vector<std::string> &extra_tokens = {});

  const Vocabulary &vocabulary() const override { return vocabulary_; }
  std::vector<double> NextDistribution(
      std::span<const TokenId> context) const override;

 private:
  NgramProvider() = default;

  Vocabulary vocabulary_;
  int order_ = 2;
  double add_k_ = 1.0;
  // History -> (next token -> count), and history totals.
  std::map<std::vector<TokenId>, std::map<TokenId, double>> counts_;
  std::map<std::vector<TokenId>, double> totals_;
};

// Memorizes continuations for exact prompts. For a prompt it knows, the
// provider follows a prefix tree of the registered continuations, putting
// `1 - smoothing` of the mass on their next tokens in proportion to their
// weights (the end token once a continuation is complete) and spreading
// `smoothing` uniformly. Unknown prompts get the uniform distribution. The
// prompt is the context up to and including the last separator token.
class MemorizingProvider : public TokenDistributionProvider {
 public:
  MemorizingProvider(Vocabulary vocabulary, TokenId separator,
                     TokenId end_token, double smoothing);

  // Registers `continuation` (not including the end token) after `prompt`,
  // which must end with the separator.
  void Memorize(const std::vector<TokenId> &prompt,
                const std::vector<TokenId> &continuation, double weight);

  const Vocabulary &vocabulary() const override { return vocabulary_; }
  std::vector<double> NextDistribution(
      std::span<const TokenId> context) const override;

 private:
  struct Continuation {
    std::vector<TokenId> tokens;
    double weight;
  };

  Vocabulary vocabulary_;
  TokenId separator_;
  TokenId end_token_;
  double smoothing_;
  std::map<std::vector<TokenId>, std::vector<Continuation>> memory_;
};

}  // namespace amrtext

#endif  // AMRTEXT_PROVIDER_H_
