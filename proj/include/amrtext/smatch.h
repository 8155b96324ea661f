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

#ifndef AMRTEXT_SMATCH_H_
#define AMRTEXT_SMATCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "amrtext/graph.h"

namespace amrtext {

// Label and value of the synthetic triple marking the root.
inline constexpr char kTopLabel[] = "TOP";
inline constexpr char kTopValue[] = "top";

// Triples of one graph with variables replaced by dense indices (in
// instance order). Inverse roles are canonicalized.
struct TripleSet {
  struct InstanceTriple {
    int variable;
    std::string concept_label;
  };
  struct RelationTriple {
    std::string label;
    int source;
    int target;
  };
  struct AttributeTriple {
    std::string label;
    int variable;
    std::string value;
  };

  std::vector<std::string> variables;
  std::vector<InstanceTriple> instances;
  std::vector<RelationTriple> relations;
  // Includes the root marker (kTopLabel, root, kTopValue).
  std::vector<AttributeTriple> attributes;

  std::size_t size() const {
    return instances.size() + relations.size() + attributes.size();
  }
};

TripleSet ExtractTriples(const AmrGraph &graph);

// mapping[i] is the predicted variable index for gold variable i, or -1.
using VariableMapping = std::vector<int>;

// Number of gold triples whose image under the mapping occurs in the
// prediction, counting duplicates with multiplicity. Throws Error if the
// mapping is not injective or out of range.
int MatchedCount(const TripleSet &gold, const TripleSet &predicted,
                 const VariableMapping &mapping);

struct SmatchScore {
  int matched = 0;
  int gold_total = 0;
  int predicted_total = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  VariableMapping best_mapping;
};

// Fills precision, recall and f1 from the counts.
SmatchScore MakeScore(int matched, int gold_total, int predicted_total,
                      VariableMapping mapping);

inline constexpr int kDefaultRestarts = 4;

// Hill-climbing search over variable mappings. The first restart starts
// from a greedy concept-matching mapping, the others from random ones
// seeded from (seed, restart). Each climb applies the best single move
// (remap one gold variable to an unused predicted variable, or swap the
// images of two gold variables) while the match count improves. Returns the
// best result over all restarts; ties go to the lexicographically smaller
// mapping. Restarts run in order, so more restarts never score lower.
SmatchScore SmatchHillClimb(const AmrGraph &gold, const AmrGraph &predicted,
                            int restarts, std::uint64_t seed);

inline constexpr int kBruteForceLimit = 8;

// Exact maximum over all injective mappings. Throws Error("size-guard")
// when both graphs have more than kBruteForceLimit variables.
SmatchScore SmatchBruteForce(const AmrGraph &gold, const AmrGraph &predicted);

}  // namespace amrtext

#endif  // AMRTEXT_SMATCH_H_
