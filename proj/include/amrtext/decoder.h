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

#ifndef AMRTEXT_DECODER_H_
#define AMRTEXT_DECODER_H_

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "amrtext/linearize.h"
#include "amrtext/provider.h"

namespace amrtext {

// Sum over j of log p(continuation[j] | context ++ continuation[0..j)).
// Every distribution consulted is checked with CheckDistribution; token ids
// outside the vocabulary throw Error("unknown-token").
double ScoreSequence(const TokenDistributionProvider &provider,
                     std::span<const TokenId> context,
                     std::span<const TokenId> continuation);

struct JointScore {
  double amr_logprob = 0.0;
  double text_logprob = 0.0;
  double total = 0.0;
};

struct JointScoreOptions {
  // Whether p(separator | amr) is part of the AMR term. When false the
  // separator only conditions the text.
  bool score_separator = true;
};

// Log of the joint AMR-and-text probability: the AMR tokens (and the
// separator) scored from an empty context, then the text conditioned on the
// full AMR and separator. Tokens are assembled with AssembleJoint.
JointScore ScoreJoint(const TokenDistributionProvider &provider,
                      const LinearizedAmr &amr,
                      const std::vector<std::string> &text,
                      const SpecialSymbolMap &symbols,
                      const JointScoreOptions &options = {});

struct Greedy {};
struct Beam {
  int width = 1;
};
struct Nucleus {
  double mass = 0.9;
  std::uint64_t seed = 0;
};

struct DecodeConfig {
  std::variant<Greedy, Beam, Nucleus> strategy = Greedy{};
  int max_length = 64;
  TokenId end_token = 0;
  // Beam ranking uses log_score / length^length_penalty. Zero keeps raw
  // log-probabilities.
  double length_penalty = 0.0;
};

// Beam ranking score of a hypothesis with `length` tokens.
double RankScore(double log_score, std::size_t length, double length_penalty);

// Throws Error("decode-config") when the configuration is out of range.
void CheckDecodeConfig(const DecodeConfig &config, std::size_t vocabulary_size);

struct Hypothesis {
  // Emitted tokens, including the end token when one was produced.
  std::vector<TokenId> tokens;
  double log_score = 0.0;
};

// Emits the most probable token at each step, lowest id on ties, until the
// end token or max_length tokens.
Hypothesis DecodeGreedy(const TokenDistributionProvider &provider,
                        std::span<const TokenId> context,
                        const DecodeConfig &config);

// Beam search without length normalization (unless configured). Each step
// keeps the `width` best expansions of the live hypotheses, ordered by score
// and then by token ids; expansions ending in the end token move to the
// finished pool. The search stops when no live hypothesis can still reach
// the best `width` finished ones, or at max_length, where live hypotheses
// are finished as they are. Returns up to `width` hypotheses, best first.
std::vector<Hypothesis> DecodeBeam(const TokenDistributionProvider &provider,
                                   std::span<const TokenId> context,
                                   const DecodeConfig &config);

// Smallest set of tokens, taken in order of decreasing probability (lower
// id first on ties), whose cumulative mass reaches `mass`. The token that
// crosses the threshold is included; zero-probability tokens never are.
std::vector<TokenId> NucleusSet(const std::vector<double> &probabilities,
                                double mass);

// Samples each step from the renormalized nucleus. Deterministic for a
// fixed seed.
Hypothesis DecodeNucleus(const TokenDistributionProvider &provider,
                         std::span<const TokenId> context,
                         const DecodeConfig &config);

// Dispatches on config.strategy. Greedy and nucleus return one hypothesis.
std::vector<Hypothesis> Decode(const TokenDistributionProvider &provider,
                               std::span<const TokenId> context,
                               const DecodeConfig &config);

// Collapses repeated blocks at the end of a sequence: while the sequence
// ends in two or more consecutive copies of the same block of 1 to 8
// tokens (longest block checked first), all but one copy are dropped.
template <typename T>
std::vector<T> StripTrailingRepetition(std::vector<T> tokens) {
  constexpr std::size_t kMaxBlock = 8;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t n = kMaxBlock; n >= 1 && !changed; --n) {
      std::size_t copies = 1;
      while ((copies + 1) * n <= tokens.size() &&
             std::equal(tokens.end() - n, tokens.end(),
                        tokens.end() - (copies + 1) * n)) {
        ++copies;
      }
      if (copies > 1) {
        tokens.resize(tokens.size() - (copies - 1) * n);
        changed = true;
      }
    }
  }
  return tokens;
}

}  // namespace amrtext

#endif  // AMRTEXT_DECODER_H_
