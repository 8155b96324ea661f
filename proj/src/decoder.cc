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

#include "amrtext/decoder.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "amrtext/error.h"

namespace amrtext {
namespace {

std::vector<double> CheckedDistribution(const TokenDistributionProvider &provider,
                                        std::span<const TokenId> context) {
  std::vector<double> probabilities = provider.NextDistribution(context);
  CheckDistribution(probabilities, provider.vocabulary().size());
  return probabilities;
}

long double LogProbability(const TokenDistributionProvider &provider,
                           double probability) {
  if (auto constant = provider.ConstantLogProbability()) return *constant;
  return std::log(static_cast<long double>(probability));
}

void CheckIds(const TokenDistributionProvider &provider,
              std::span<const TokenId> ids) {
  const auto size = static_cast<TokenId>(provider.vocabulary().size());
  for (TokenId id : ids) {
    if (id < 0 || id >= size) {
      throw Error("unknown-token",
                  "token id " + std::to_string(id) + " is not in the vocabulary");
    }
  }
}

// Log-probabilities are accumulated in extended precision so that sums of
// many identical terms stay exact.
struct Partial {
  std::vector<TokenId> tokens;
  long double score = 0.0L;
};

double RankOf(long double score, std::size_t length, double length_penalty) {
  return RankScore(static_cast<double>(score), length, length_penalty);
}

bool RanksBefore(double rank_a, const std::vector<TokenId> &a, double rank_b,
                 const std::vector<TokenId> &b) {
  if (rank_a != rank_b) return rank_a > rank_b;
  return a < b;
}

long double SumLogProbabilities(const TokenDistributionProvider &provider,
                                std::span<const TokenId> context,
                                std::span<const TokenId> continuation) {
  CheckIds(provider, context);
  CheckIds(provider, continuation);
  std::vector<TokenId> prefix(context.begin(), context.end());
  prefix.reserve(context.size() + continuation.size());
  long double total = 0.0L;
  for (TokenId token : continuation) {
    std::vector<double> probabilities = CheckedDistribution(provider, prefix);
    total += LogProbability(provider, probabilities[token]);
    prefix.push_back(token);
  }
  return total;
}

}  // namespace

double ScoreSequence(const TokenDistributionProvider &provider,
                     std::span<const TokenId> context,
                     std::span<const TokenId> continuation) {
  return static_cast<double>(SumLogProbabilities(provider, context, continuation));
}

JointScore ScoreJoint(const TokenDistributionProvider &provider,
                      const LinearizedAmr &amr,
                      const std::vector<std::string> &text,
                      const SpecialSymbolMap &symbols,
                      const JointScoreOptions &options) {
  std::vector<TokenId> stream =
      provider.vocabulary().Encode(AssembleJoint(amr, text, symbols));
  const std::size_t amr_end = amr.tokens.size() + 1;  // through the separator
  std::span<const TokenId> all(stream);
  std::size_t scored_amr = options.score_separator ? amr_end : amr_end - 1;
  long double amr_part = SumLogProbabilities(provider, {}, all.first(scored_amr));
  long double text_part =
      SumLogProbabilities(provider, all.first(amr_end), all.subspan(amr_end));
  // The total is rounded once, so it matches scoring the stream in one go.
  JointScore score;
  score.amr_logprob = static_cast<double>(amr_part);
  score.text_logprob = static_cast<double>(text_part);
  score.total = static_cast<double>(amr_part + text_part);
  return score;
}

double RankScore(double log_score, std::size_t length, double length_penalty) {
  if (length_penalty == 0.0 || length == 0) return log_score;
  return log_score / std::pow(static_cast<double>(length), length_penalty);
}

void CheckDecodeConfig(const DecodeConfig &config, std::size_t vocabulary_size) {
  if (config.max_length < 1) {
    throw Error("decode-config", "max_length must be at least 1");
  }
  if (config.end_token < 0 ||
      static_cast<std::size_t>(config.end_token) >= vocabulary_size) {
    throw Error("decode-config", "end token is not in the vocabulary");
  }
  if (const Beam *beam = std::get_if<Beam>(&config.strategy)) {
    if (beam->width < 1) throw Error("decode-config", "beam width must be >= 1");
  }
  if (const Nucleus *nucleus = std::get_if<Nucleus>(&config.strategy)) {
    if (!(nucleus->mass > 0.0 && nucleus->mass <= 1.0)) {
      throw Error("decode-config", "nucleus mass must lie in (0, 1]");
    }
  }
  if (!(config.length_penalty >= 0.0)) {
    throw Error("decode-config", "length_penalty must be nonnegative");
  }
}

Hypothesis DecodeGreedy(const TokenDistributionProvider &provider,
                        std::span<const TokenId> context,
                        const DecodeConfig &config) {
  CheckDecodeConfig(config, provider.vocabulary().size());
  CheckIds(provider, context);
  std::vector<TokenId> prefix(context.begin(), context.end());
  Partial hypothesis;
  for (int step = 0; step < config.max_length; ++step) {
    std::vector<double> probabilities = CheckedDistribution(provider, prefix);
    auto best = std::max_element(probabilities.begin(), probabilities.end());
    TokenId token = static_cast<TokenId>(best - probabilities.begin());
    hypothesis.score += LogProbability(provider, *best);
    hypothesis.tokens.push_back(token);
    prefix.push_back(token);
    if (token == config.end_token) break;
  }
  return {hypothesis.tokens, static_cast<double>(hypothesis.score)};
}

std::vector<Hypothesis> DecodeBeam(const TokenDistributionProvider &provider,
                                   std::span<const TokenId> context,
                                   const DecodeConfig &config) {
  CheckDecodeConfig(config, provider.vocabulary().size());
  CheckIds(provider, context);
  const Beam *beam = std::get_if<Beam>(&config.strategy);
  const std::size_t width = beam ? static_cast<std::size_t>(beam->width) : 1;
  const double penalty = config.length_penalty;

  auto rank = [&](const Partial &p) {
    return RankOf(p.score, p.tokens.size(), penalty);
  };
  auto sort_pool = [&](std::vector<Partial> &pool) {
    std::sort(pool.begin(), pool.end(), [&](const Partial &a, const Partial &b) {
      return RanksBefore(rank(a), a.tokens, rank(b), b.tokens);
    });
  };

  struct Candidate {
    std::size_t parent;
    TokenId token;
    long double score;
    double rank;
  };

  std::vector<Partial> live(1), finished;
  std::vector<TokenId> prefix(context.begin(), context.end());
  for (int step = 0; step < config.max_length && !live.empty(); ++step) {
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < live.size(); ++i) {
      prefix.resize(context.size());
      prefix.insert(prefix.end(), live[i].tokens.begin(), live[i].tokens.end());
      std::vector<double> probabilities = CheckedDistribution(provider, prefix);
      for (std::size_t t = 0; t < probabilities.size(); ++t) {
        if (probabilities[t] <= 0.0) continue;
        long double score =
            live[i].score + LogProbability(provider, probabilities[t]);
        candidates.push_back({i, static_cast<TokenId>(t), score,
                              RankOf(score, live[i].tokens.size() + 1, penalty)});
      }
    }
    // Token sequences compare by parent prefix first; parents share length.
    auto before = [&](const Candidate &a, const Candidate &b) {
      if (a.rank != b.rank) return a.rank > b.rank;
      if (a.parent != b.parent) {
        const auto &ta = live[a.parent].tokens, &tb = live[b.parent].tokens;
        if (ta != tb) return ta < tb;
      }
      return a.token < b.token;
    };
    std::size_t keep = std::min(width, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + keep,
                      candidates.end(), before);

    std::vector<Partial> next;
    for (std::size_t c = 0; c < keep; ++c) {
      Partial p;
      p.tokens = live[candidates[c].parent].tokens;
      p.tokens.push_back(candidates[c].token);
      p.score = candidates[c].score;
      if (candidates[c].token == config.end_token) {
        finished.push_back(std::move(p));
      } else {
        next.push_back(std::move(p));
      }
    }
    live = std::move(next);
    sort_pool(finished);
    if (finished.size() > width) finished.resize(width);

    if (finished.size() >= width && !live.empty()) {
      if (penalty != 0.0) break;
      // Extending a hypothesis never raises its score.
      const Partial &worst = finished.back();
      bool can_improve = false;
      for (const Partial &p : live) {
        if (RanksBefore(rank(p), p.tokens, rank(worst), worst.tokens)) {
          can_improve = true;
          break;
        }
      }
      if (!can_improve) live.clear();
    }
  }
  for (Partial &p : live) finished.push_back(std::move(p));
  sort_pool(finished);
  if (finished.size() > width) finished.resize(width);

  std::vector<Hypothesis> result;
  result.reserve(finished.size());
  for (Partial &p : finished) {
    result.push_back({std::move(p.tokens), static_cast<double>(p.score)});
  }
  return result;
}

std::vector<TokenId> NucleusSet(const std::vector<double> &probabilities,
                                double mass) {
  std::vector<TokenId> order(probabilities.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](TokenId a, TokenId b) {
    return probabilities[a] > probabilities[b];
  });
  std::vector<TokenId> nucleus;
  double cumulative = 0.0;
  for (TokenId token : order) {
    if (probabilities[token] <= 0.0) break;
    nucleus.push_back(token);
    cumulative += probabilities[token];
    if (cumulative >= mass) break;
  }
  return nucleus;
}

Hypothesis DecodeNucleus(const TokenDistributionProvider &provider,
                         std::span<const TokenId> context,
                         const DecodeConfig &config) {
  CheckDecodeConfig(config, provider.vocabulary().size());
  CheckIds(provider, context);
  const Nucleus *nucleus = std::get_if<Nucleus>(&config.strategy);
  const Nucleus settings = nucleus ? *nucleus : Nucleus{};
  std::mt19937_64 rng(settings.seed);

  std::vector<TokenId> prefix(context.begin(), context.end());
  Partial hypothesis;
  for (int step = 0; step < config.max_length; ++step) {
    std::vector<double> probabilities = CheckedDistribution(provider, prefix);
    std::vector<TokenId> candidates = NucleusSet(probabilities, settings.mass);
    double total = 0.0;
    for (TokenId t : candidates) total += probabilities[t];
    // 53 random bits mapped to [0, 1), identical on every platform.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double target = u * total;
    TokenId token = candidates.back();
    double cumulative = 0.0;
    for (TokenId t : candidates) {
      cumulative += probabilities[t];
      if (target < cumulative) {
        token = t;
        break;
      }
    }
    hypothesis.score += LogProbability(provider, probabilities[token]);
    hypothesis.tokens.push_back(token);
    prefix.push_back(token);
    if (token == config.end_token) break;
  }
  return {hypothesis.tokens, static_cast<double>(hypothesis.score)};
}

std::vector<Hypothesis> Decode(const TokenDistributionProvider &provider,
                               std::span<const TokenId> context,
                               const DecodeConfig &config) {
  if (std::holds_alternative<Beam>(config.strategy)) {
    return DecodeBeam(provider, context, config);
  }
  if (std::holds_alternative<Nucleus>(config.strategy)) {
    return {DecodeNucleus(provider, context, config)};
  }
  return {DecodeGreedy(provider, context, config)};
}

}  // namespace amrtext
