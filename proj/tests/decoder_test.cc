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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "amrtext/decoder.h"
#include "amrtext/error.h"
#include "amrtext/provider.h"
#include "test_support.h"

namespace amrtext {
namespace {

using testing::ConstantProvider;
using testing::RandomProvider;

std::unique_ptr<TableProvider> GardenPath() {
  return TableProvider::FromFile(testing::SourcePath("data/fixture_table.txt"));
}

DecodeConfig Config(std::variant<Greedy, Beam, Nucleus> strategy, int max_length,
                    TokenId end = 0) {
  DecodeConfig c;
  c.strategy = strategy;
  c.max_length = max_length;
  c.end_token = end;
  return c;
}

TEST(Vocabulary, AddAndLookup) {
  Vocabulary v({"a", "b"});
  EXPECT_EQ(v.Add("c"), 2);
  EXPECT_EQ(v.Add("a"), 0);
  EXPECT_EQ(v.size(), 3u);
  EXPECT_EQ(v.Encode({"c", "a"}), (std::vector<TokenId>{2, 0}));
  std::vector<TokenId> ids = {1, 2};
  EXPECT_EQ(v.Decode(ids), (std::vector<std::string>{"b", "c"}));
  try {
    v.Id("zzz");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), "unknown-token");
  }
}

TEST(CheckDistribution, Rules) {
  EXPECT_NO_THROW(CheckDistribution({0.5, 0.5}, 2));
  EXPECT_THROW(CheckDistribution({0.5, 0.5}, 3), Error);
  EXPECT_THROW(CheckDistribution({1.5, -0.5}, 2), Error);
  EXPECT_THROW(CheckDistribution({0.5, 0.4}, 2), Error);
  EXPECT_NO_THROW(CheckDistribution({0.5, 0.5 + 5e-10}, 2));
}

TEST(TableProvider, LongestSuffixWins) {
  auto table = GardenPath();
  const Vocabulary &v = table->vocabulary();
  std::vector<TokenId> ctx = {v.Id("a")};
  EXPECT_DOUBLE_EQ(table->NextDistribution(ctx)[v.Id("b")], 0.33);
  ctx = {v.Id("a"), v.Id("b")};
  EXPECT_DOUBLE_EQ(table->NextDistribution(ctx)[v.Id("<EOS>")], 1.0);
  ctx = {v.Id("c"), v.Id("b")};  // falls back to the `b` row
  EXPECT_DOUBLE_EQ(table->NextDistribution(ctx)[v.Id("c")], 0.1);
}

TEST(TableProvider, Errors) {
  EXPECT_THROW(TableProvider::FromText("ctx => a=1"), Error);
  EXPECT_THROW(TableProvider::FromText("vocab a b\nctx => a=0.5"), Error);
  EXPECT_THROW(TableProvider::FromText("vocab a b\nctx => z=1"), Error);
  EXPECT_THROW(TableProvider::FromText("vocab a b\nctx a b"), Error);
  EXPECT_THROW(TableProvider::FromText("vocab a\nfoo"), Error);
  auto no_fallback = TableProvider::FromText("vocab a b\nctx a => b=1");
  std::vector<TokenId> ctx = {1};
  EXPECT_THROW(no_fallback->NextDistribution(ctx), Error);
}

TEST(NgramProvider, CountsAndSmoothing) {
  auto model = NgramProvider::Train({{"a", "b"}, {"a", "c"}}, 2, 1.0, "</s>");
  const Vocabulary &v = model->vocabulary();
  ASSERT_EQ(v.size(), 4u);
  std::vector<TokenId> ctx = {v.Id("a")};
  std::vector<double> p = model->NextDistribution(ctx);
  // After `a`: b once, c once, of 2; add-one over 4 tokens.
  EXPECT_DOUBLE_EQ(p[v.Id("b")], 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(p[v.Id("a")], 1.0 / 6.0);
  EXPECT_NO_THROW(CheckDistribution(p, v.size()));
  EXPECT_NO_THROW(CheckDistribution(model->NextDistribution({}), v.size()));
}

TEST(MemorizingProvider, FollowsContinuations) {
  Vocabulary v({"<EOS>", "<SEP>", "x", "u", "w"});
  MemorizingProvider m(v, 1, 0, 0.1);
  m.Memorize({2, 1}, {3, 4}, 1.0);
  std::vector<TokenId> ctx = {2, 1};
  std::vector<double> p = m.NextDistribution(ctx);
  EXPECT_DOUBLE_EQ(p[3], 0.1 / 5 + 0.9);
  EXPECT_DOUBLE_EQ(p[4], 0.1 / 5);
  ctx = {2, 1, 3, 4};
  EXPECT_DOUBLE_EQ(m.NextDistribution(ctx)[0], 0.1 / 5 + 0.9);
  ctx = {4, 1};  // unknown prompt
  EXPECT_DOUBLE_EQ(m.NextDistribution(ctx)[2], 0.2);
  EXPECT_THROW(m.Memorize({2}, {3}, 1.0), Error);
  EXPECT_THROW(MemorizingProvider(v, 1, 0, 0.0), Error);
}

TEST(ScoreSequence, Uniform) {
  UniformProvider uniform(Vocabulary({"a", "b", "c", "d"}));
  std::vector<TokenId> seq = {0, 1, 2};
  EXPECT_DOUBLE_EQ(ScoreSequence(uniform, {}, seq), 3 * std::log(0.25));
  EXPECT_EQ(ScoreSequence(uniform, seq, {}), 0.0);
}

TEST(ScoreSequence, HandMultipliedTable) {
  auto table = GardenPath();
  const Vocabulary &v = table->vocabulary();
  std::vector<TokenId> seq = {v.Id("a"), v.Id("b")};
  EXPECT_NEAR(ScoreSequence(*table, {}, seq), std::log(0.6) + std::log(0.33), 1e-15);
  std::vector<TokenId> ctx = {v.Id("b")};
  std::vector<TokenId> rest = {v.Id("c"), v.Id("<EOS>")};
  EXPECT_NEAR(ScoreSequence(*table, ctx, rest), std::log(0.1), 1e-15);
}

TEST(ScoreSequence, Errors) {
  UniformProvider uniform(Vocabulary({"a"}));
  std::vector<TokenId> bad = {5};
  EXPECT_THROW(ScoreSequence(uniform, {}, bad), Error);
  ConstantProvider broken({0.5, 0.4});
  std::vector<TokenId> seq = {0};
  try {
    ScoreSequence(broken, {}, seq);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), "normalization");
  }
}

TEST(ScoreJoint, UniformCount) {
  Vocabulary v({"x", "y", "<SEP>", "u"});
  UniformProvider uniform(v);
  SpecialSymbolMap symbols("<SEP>", {});
  LinearizedAmr amr{{"x", "y"}, Representation::kNodesOnly};
  JointScore s = ScoreJoint(uniform, amr, {"u"}, symbols);
  EXPECT_DOUBLE_EQ(s.total, 4 * std::log(0.25));
  EXPECT_DOUBLE_EQ(s.amr_logprob, 3 * std::log(0.25));
  EXPECT_DOUBLE_EQ(s.text_logprob, std::log(0.25));
  JointScore empty = ScoreJoint(uniform, amr, {}, symbols);
  EXPECT_EQ(empty.text_logprob, 0.0);
  JointScore unscored = ScoreJoint(uniform, amr, {"u"}, symbols, {.score_separator = false});
  EXPECT_DOUBLE_EQ(unscored.total, 3 * std::log(0.25));
}

TEST(ScoreJoint, UniformClosedFormIsExact) {
  for (int size : {3, 7, 10, 1000}) {
    std::vector<std::string> words = {"<SEP>"};
    for (int i = 1; i < size; ++i) words.push_back("w" + std::to_string(i));
    UniformProvider uniform{Vocabulary(words)};
    SpecialSymbolMap symbols("<SEP>", {});
    for (int m : {1, 6}) {
      for (int n : {0, 5, 23}) {
        LinearizedAmr amr{std::vector<std::string>(m, "w1"), Representation::kNodesOnly};
        double expected = static_cast<double>(-static_cast<long double>(m + n + 1) *
                                              std::log(static_cast<long double>(size)));
        EXPECT_EQ(ScoreJoint(uniform, amr, std::vector<std::string>(n, "w2"), symbols).total,
                  expected)
            << size << " " << m << " " << n;
      }
    }
  }
}

TEST(ScoreJoint, AdditivityOnRandomProviders) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    RandomProvider provider(6, trial);
    const Vocabulary &v = provider.vocabulary();
    SpecialSymbolMap symbols("t5", {});
    std::uniform_int_distribution<int> token(0, 4), length(0, 5);
    LinearizedAmr amr;
    std::vector<std::string> text;
    for (int i = 1 + length(rng); i > 0; --i) amr.tokens.push_back(v.Token(token(rng)));
    for (int i = length(rng); i > 0; --i) text.push_back(v.Token(token(rng)));
    JointScore s = ScoreJoint(provider, amr, text, symbols);
    std::vector<TokenId> all = v.Encode(AssembleJoint(amr, text, symbols));
    EXPECT_NEAR(s.total, ScoreSequence(provider, {}, all), 1e-12);
    EXPECT_NEAR(s.total, s.amr_logprob + s.text_logprob, 1e-12);
  }
}

TEST(DecodeGreedy, ImmediateStop) {
  ConstantProvider stop({1.0, 0.0, 0.0});
  Hypothesis h = DecodeGreedy(stop, {}, Config(Greedy{}, 5));
  EXPECT_EQ(h.tokens, (std::vector<TokenId>{0}));
  EXPECT_EQ(h.log_score, 0.0);
}

TEST(DecodeGreedy, ArgmaxChain) {
  auto table = TableProvider::FromText(
      "vocab <EOS> x y z\n"
      "ctx => x=0.5 y=0.3 z=0.2\n"
      "ctx x => y=0.7 z=0.3\n"
      "ctx x y => z=0.6 <EOS>=0.4\n"
      "ctx x y z => <EOS>=1\n");
  Hypothesis h = DecodeGreedy(*table, {}, Config(Greedy{}, 10));
  EXPECT_EQ(table->vocabulary().Decode(h.tokens),
            (std::vector<std::string>{"x", "y", "z", "<EOS>"}));
  EXPECT_NEAR(h.log_score, std::log(0.5 * 0.7 * 0.6), 1e-15);
}

TEST(DecodeGreedy, TiesGoToLowestIdAndLengthCaps) {
  ConstantProvider flat({0.25, 0.25, 0.25, 0.25});
  Hypothesis h = DecodeGreedy(flat, {}, Config(Greedy{}, 3, 3));
  EXPECT_EQ(h.tokens, (std::vector<TokenId>{0, 0, 0}));
}

TEST(DecodeBeam, GardenPathBeatsGreedy) {
  auto table = GardenPath();
  Hypothesis greedy = DecodeGreedy(*table, {}, Config(Greedy{}, 3));
  std::vector<Hypothesis> beam = DecodeBeam(*table, {}, Config(Beam{2}, 3));
  EXPECT_EQ(table->vocabulary().Decode(greedy.tokens),
            (std::vector<std::string>{"a", "<EOS>"}));
  ASSERT_EQ(beam.size(), 2u);
  EXPECT_EQ(table->vocabulary().Decode(beam[0].tokens),
            (std::vector<std::string>{"b", "<EOS>"}));
  EXPECT_GT(beam[0].log_score, greedy.log_score);
  EXPECT_NEAR(beam[0].log_score, std::log(0.36), 1e-15);
  EXPECT_GE(beam[0].log_score, beam[1].log_score);
}

TEST(DecodeBeam, WidthOneIsGreedy) {
  for (int seed = 0; seed < 40; ++seed) {
    RandomProvider provider(4, seed);
    Hypothesis greedy = DecodeGreedy(provider, {}, Config(Greedy{}, 6));
    std::vector<Hypothesis> beam = DecodeBeam(provider, {}, Config(Beam{1}, 6));
    ASSERT_EQ(beam.size(), 1u);
    EXPECT_EQ(beam[0].tokens, greedy.tokens) << seed;
    EXPECT_EQ(beam[0].log_score, greedy.log_score) << seed;
  }
}

TEST(DecodeBeam, SaturatedBeamMatchesEnumeration) {
  for (int seed = 0; seed < 30; ++seed) {
    RandomProvider provider(3, 100 + seed, 0.2);
    auto best = testing::ExhaustiveBest(provider, {}, 3, 0);
    std::vector<Hypothesis> beam = DecodeBeam(provider, {}, Config(Beam{27}, 3));
    EXPECT_EQ(beam[0].tokens, best.tokens) << seed;
    EXPECT_EQ(beam[0].log_score, static_cast<double>(best.log_score)) << seed;
  }
}

TEST(DecodeBeam, ResultsSortedAndScoresConsistent) {
  RandomProvider provider(4, 7);
  std::vector<TokenId> ctx = {1, 2};
  std::vector<Hypothesis> beam = DecodeBeam(provider, ctx, Config(Beam{5}, 4));
  ASSERT_EQ(beam.size(), 5u);
  for (std::size_t i = 0; i < beam.size(); ++i) {
    EXPECT_LE(beam[i].log_score, 0.0);
    EXPECT_NEAR(beam[i].log_score, ScoreSequence(provider, ctx, beam[i].tokens), 1e-12);
    if (i > 0) {
      EXPECT_GE(beam[i - 1].log_score, beam[i].log_score);
    }
  }
}

TEST(DecodeBeam, LengthPenaltyHook) {
  auto table = GardenPath();
  DecodeConfig c = Config(Beam{3}, 3);
  c.length_penalty = 1.0;
  std::vector<Hypothesis> beam = DecodeBeam(*table, {}, c);
  for (std::size_t i = 1; i < beam.size(); ++i) {
    EXPECT_GE(RankScore(beam[i - 1].log_score, beam[i - 1].tokens.size(), 1.0),
              RankScore(beam[i].log_score, beam[i].tokens.size(), 1.0));
  }
}

TEST(DecodeConfig, Validation) {
  UniformProvider u(Vocabulary({"a", "b"}));
  EXPECT_THROW(DecodeGreedy(u, {}, Config(Greedy{}, 0)), Error);
  EXPECT_THROW(DecodeBeam(u, {}, Config(Beam{0}, 3)), Error);
  EXPECT_THROW(DecodeNucleus(u, {}, Config(Nucleus{0.0, 1}, 3)), Error);
  EXPECT_THROW(DecodeNucleus(u, {}, Config(Nucleus{1.5, 1}, 3)), Error);
  EXPECT_THROW(DecodeGreedy(u, {}, Config(Greedy{}, 3, 7)), Error);
}

TEST(NucleusSet, CumulativeSortOracle) {
  EXPECT_EQ(NucleusSet({0.5, 0.3, 0.2}, 0.7), (std::vector<TokenId>{0, 1}));
  EXPECT_EQ(NucleusSet({0.2, 0.3, 0.5}, 0.5), (std::vector<TokenId>{2}));
  EXPECT_EQ(NucleusSet({0.2, 0.3, 0.5}, 0.51), (std::vector<TokenId>{2, 1}));
  EXPECT_EQ(NucleusSet({0.5, 0.5, 0.0}, 1.0), (std::vector<TokenId>{0, 1}));
  EXPECT_EQ(NucleusSet({0.25, 0.25, 0.5}, 0.6), (std::vector<TokenId>{2, 0}));
}

TEST(DecodeNucleus, SamplesStayInNucleus) {
  ConstantProvider p({0.5, 0.3, 0.2});
  std::set<TokenId> seen;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Hypothesis h = DecodeNucleus(p, {}, Config(Nucleus{0.7, seed}, 1, 2));
    ASSERT_EQ(h.tokens.size(), 1u);
    seen.insert(h.tokens[0]);
  }
  EXPECT_EQ(seen, (std::set<TokenId>{0, 1}));
}

TEST(DecodeNucleus, FullMassCoversSupport) {
  ConstantProvider p({0.5, 0.3, 0.2, 0.0});
  std::set<TokenId> seen;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    seen.insert(DecodeNucleus(p, {}, Config(Nucleus{1.0, seed}, 1, 3)).tokens[0]);
  }
  EXPECT_EQ(seen, (std::set<TokenId>{0, 1, 2}));
}

TEST(DecodeNucleus, TinyMassIsArgmax) {
  for (int seed = 0; seed < 20; ++seed) {
    RandomProvider provider(5, seed);
    Hypothesis greedy = DecodeGreedy(provider, {}, Config(Greedy{}, 8));
    Hypothesis nucleus = DecodeNucleus(
        provider, {},
        Config(Nucleus{std::numeric_limits<double>::denorm_min(), 99}, 8));
    EXPECT_EQ(nucleus.tokens, greedy.tokens);
  }
}

TEST(DecodeNucleus, DeterministicForSeed) {
  RandomProvider provider(5, 1);
  Hypothesis a = DecodeNucleus(provider, {}, Config(Nucleus{0.9, 42}, 20));
  Hypothesis b = DecodeNucleus(provider, {}, Config(Nucleus{0.9, 42}, 20));
  EXPECT_EQ(a.tokens, b.tokens);
  EXPECT_EQ(a.log_score, b.log_score);
}

TEST(StripTrailingRepetition, Examples) {
  using V = std::vector<std::string>;
  EXPECT_EQ(StripTrailingRepetition(V{"a", "b", "c"}), (V{"a", "b", "c"}));
  EXPECT_EQ(StripTrailingRepetition(V{"a", "b", "x", "y", "x", "y", "x", "y"}),
            (V{"a", "b", "x", "y"}));
  EXPECT_EQ(StripTrailingRepetition(V{"a", "a", "a"}), (V{"a"}));
  EXPECT_EQ(StripTrailingRepetition(V{}), V{});
}

TEST(StripTrailingRepetition, IdempotentAndNeverLonger) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> tokens;
    int n = std::uniform_int_distribution<int>(0, 20)(rng);
    for (int i = 0; i < n; ++i) tokens.push_back(std::uniform_int_distribution<int>(0, 2)(rng));
    std::vector<int> once = StripTrailingRepetition(tokens);
    EXPECT_LE(once.size(), tokens.size());
    EXPECT_EQ(StripTrailingRepetition(once), once);
    EXPECT_TRUE(std::equal(once.begin(), once.end(), tokens.begin()));
  }
}

}  // namespace
}  // namespace amrtext
