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

#include "amrtext/error.h"
#include "amrtext/penman.h"
#include "amrtext/smatch.h"
#include "test_support.h"

namespace amrtext {
namespace {

constexpr char kExample[] =
    "(r / recommend-01 :ARG1 (a / advocate-01 :ARG1 (i / it) :manner (v / vigorous)))";

TEST(ExtractTriples, ExampleCounts) {
  TripleSet t = ExtractTriples(ParsePenman(kExample));
  EXPECT_EQ(t.instances.size(), 4u);
  EXPECT_EQ(t.relations.size(), 3u);
  EXPECT_EQ(t.attributes.size(), 1u);
  EXPECT_EQ(t.size(), 8u);
  EXPECT_EQ(t.attributes[0].label, kTopLabel);
  EXPECT_EQ(t.attributes[0].value, kTopValue);
}

TEST(ExtractTriples, SingleNode) {
  EXPECT_EQ(ExtractTriples(ParsePenman("(a / cat)")).size(), 2u);
}

TEST(ExtractTriples, InverseIsCanonicalized) {
  TripleSet t = ExtractTriples(ParsePenman("(x / person :ARG0-of (y / sing-01))"));
  ASSERT_EQ(t.relations.size(), 1u);
  EXPECT_EQ(t.relations[0].label, "ARG0");
  EXPECT_EQ(t.variables[t.relations[0].source], "y");
  EXPECT_EQ(t.variables[t.relations[0].target], "x");
}

TEST(MatchedCount, Basics) {
  TripleSet g = ExtractTriples(ParsePenman(kExample));
  EXPECT_EQ(MatchedCount(g, g, {0, 1, 2, 3}), 8);
  EXPECT_EQ(MatchedCount(g, g, {-1, -1, -1, -1}), 0);
  TripleSet cat = ExtractTriples(ParsePenman("(a / cat)"));
  TripleSet dog = ExtractTriples(ParsePenman("(b / dog)"));
  EXPECT_EQ(MatchedCount(cat, dog, {0}), 1);
  EXPECT_THROW(MatchedCount(g, g, {0, 0, 1, 2}), Error);
  EXPECT_THROW(MatchedCount(g, g, {0, 1}), Error);
}

TEST(MatchedCount, DuplicatesCountedWithMultiplicity) {
  AmrGraph gold = ParsePenman("(a / x :ARG0 (b / y) :ARG0 b)");
  AmrGraph pred = ParsePenman("(a / x :ARG0 (b / y))");
  TripleSet g = ExtractTriples(gold), p = ExtractTriples(pred);
  // 2 instances + TOP + one of the two duplicate relations.
  EXPECT_EQ(MatchedCount(g, p, {0, 1}), 4);
  EXPECT_EQ(MatchedCount(p, g, {0, 1}), 4);
}

TEST(SmatchHillClimb, CatVersusDog) {
  SmatchScore s = SmatchHillClimb(ParsePenman("(a / cat)"), ParsePenman("(b / dog)"), 4, 0);
  EXPECT_EQ(s.matched, 1);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
}

TEST(SmatchHillClimb, IdentityAndRenaming) {
  AmrGraph g = ParsePenman("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
  EXPECT_EQ(SmatchHillClimb(g, g, 1, 0).f1, 1.0);
  AmrGraph r = ParsePenman("(q / want-01 :ARG1 (z / go-02 :ARG0 (k / boy)) :ARG0 k)");
  EXPECT_EQ(SmatchHillClimb(g, r, 1, 0).f1, 1.0);
}

TEST(SmatchHillClimb, InverseEquivalentToForward) {
  AmrGraph a = ParsePenman("(t / teacher :ARG0-of (s / sing-01))");
  AmrGraph b = ParsePenman("(t / teacher :ARG0-of (s / sing-01))");
  AmrGraph forward = ParsePenman("(s / sing-01 :ARG0 (t / teacher))");
  EXPECT_EQ(SmatchHillClimb(a, b, 4, 0).f1, 1.0);
  // Same triples except the root marker.
  SmatchScore s = SmatchHillClimb(a, forward, 4, 0);
  EXPECT_EQ(s.matched, 3);
  EXPECT_EQ(s.gold_total, 4);
}

TEST(SmatchHillClimb, ScoreFieldsConsistent) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    AmrGraph g = testing::RandomGraph(rng), p = testing::RandomGraph(rng);
    SmatchScore s = SmatchHillClimb(g, p, 4, 0);
    EXPECT_EQ(MatchedCount(ExtractTriples(g), ExtractTriples(p), s.best_mapping), s.matched);
    EXPECT_GE(s.f1, 0.0);
    EXPECT_LE(s.f1, 1.0);
    EXPECT_EQ(s.gold_total, static_cast<int>(ExtractTriples(g).size()));
  }
}

TEST(SmatchHillClimb, DeterministicAndValidatesRestarts) {
  std::mt19937_64 rng(1);
  AmrGraph g = testing::RandomGraph(rng), p = testing::RandomGraph(rng);
  SmatchScore a = SmatchHillClimb(g, p, 5, 3), b = SmatchHillClimb(g, p, 5, 3);
  EXPECT_EQ(a.matched, b.matched);
  EXPECT_EQ(a.best_mapping, b.best_mapping);
  EXPECT_THROW(SmatchHillClimb(g, p, 0, 3), Error);
}

TEST(SmatchHillClimb, RestartMonotonicity) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    AmrGraph g = testing::RandomGraph(rng), p = testing::RandomGraph(rng);
    int previous = -1;
    for (int restarts = 1; restarts <= 8; ++restarts) {
      int matched = SmatchHillClimb(g, p, restarts, 0).matched;
      EXPECT_GE(matched, previous);
      previous = matched;
    }
  }
}

TEST(SmatchBruteForce, DisjointSizesEnumeratesInjectiveMaps) {
  AmrGraph gold = ParsePenman("(a / x :ARG0 (b / y))");
  AmrGraph pred = ParsePenman("(p / y :ARG0 (q / x) :ARG1 (r / y))");
  testing::OracleSmatch oracle = testing::OracleSmatchScore(gold, pred);
  SmatchScore s = SmatchBruteForce(gold, pred);
  EXPECT_EQ(s.matched, oracle.matched);
  // 2 gold variables into 3 predicted ones, each possibly unmapped.
  EXPECT_EQ(oracle.mappings, 1 + 3 + 3 + 3 * 2);
}

TEST(SmatchBruteForce, IdenticalAndGuard) {
  AmrGraph g = ParsePenman(kExample);
  EXPECT_EQ(SmatchBruteForce(g, g).f1, 1.0);
  std::string big = "(v0 / c";
  for (int i = 1; i < 10; ++i) big += " :op" + std::to_string(i) + " (v" + std::to_string(i) + " / c)";
  big += ")";
  AmrGraph large = ParsePenman(big);
  try {
    SmatchBruteForce(large, large);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), "size-guard");
  }
  // One small side is enough.
  EXPECT_NO_THROW(SmatchBruteForce(large, ParsePenman("(a / c)")));
}

TEST(SmatchBruteForce, MatchesTestOracle) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    AmrGraph g = testing::RandomGraph(rng, {.max_variables = 5});
    AmrGraph p = testing::RandomGraph(rng, {.max_variables = 5});
    testing::OracleSmatch oracle = testing::OracleSmatchScore(g, p);
    SmatchScore s = SmatchBruteForce(g, p);
    EXPECT_EQ(s.matched, oracle.matched);
    EXPECT_EQ(s.gold_total, oracle.gold_total);
    EXPECT_EQ(s.predicted_total, oracle.predicted_total);
  }
}

TEST(Smatch, SwappingSidesSwapsPrecisionAndRecall) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    AmrGraph g = testing::RandomGraph(rng, {.max_variables = 5});
    AmrGraph p = testing::RandomGraph(rng, {.max_variables = 5});
    SmatchScore forward = SmatchBruteForce(g, p), backward = SmatchBruteForce(p, g);
    EXPECT_EQ(forward.matched, backward.matched);
    EXPECT_DOUBLE_EQ(forward.precision, backward.recall);
    EXPECT_DOUBLE_EQ(forward.recall, backward.precision);
    EXPECT_DOUBLE_EQ(forward.f1, backward.f1);
  }
}

TEST(Smatch, HillClimbNeverExceedsOptimum) {
  std::mt19937_64 rng(57);
  for (int trial = 0; trial < 100; ++trial) {
    AmrGraph g = testing::RandomGraph(rng), p = testing::RandomGraph(rng);
    EXPECT_LE(SmatchHillClimb(g, p, 1, trial).matched, SmatchBruteForce(g, p).matched);
  }
}

TEST(MakeScore, ZeroGuards) {
  SmatchScore s = MakeScore(0, 0, 0, {});
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

}  // namespace
}  // namespace amrtext
