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

#include "amrtext/smatch.h"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>
#include <unordered_map>

#include "amrtext/error.h"

namespace amrtext {

TripleSet ExtractTriples(const AmrGraph &graph) {
  TripleSet triples;
  std::unordered_map<std::string, int> index;
  for (const Instance &instance : graph.instances) {
    if (index.count(instance.variable)) {
      throw InvalidGraphError("duplicate instance for '" + instance.variable +
                              "'");
    }
    int id = static_cast<int>(triples.variables.size());
    index[instance.variable] = id;
    triples.variables.push_back(instance.variable);
    triples.instances.push_back({id, instance.concept_label});
  }
  auto lookup = [&](const std::string &variable) {
    auto it = index.find(variable);
    if (it == index.end()) {
      throw InvalidGraphError("undefined variable '" + variable + "'");
    }
    return it->second;
  };
  for (const Edge &edge : graph.edges) {
    if (edge.constant) {
      triples.attributes.push_back({edge.role, lookup(edge.source), edge.target});
    } else {
      Edge canonical = CanonicalEdge(edge);
      triples.relations.push_back({canonical.role, lookup(canonical.source),
                                   lookup(canonical.target)});
    }
  }
  triples.attributes.push_back({kTopLabel, lookup(graph.root), kTopValue});
  return triples;
}

namespace {

// A triple with its variables already mapped into the predicted graph.
// Kind 0: instance, 1: relation, 2: attribute.
using TripleKey = std::tuple<int, std::string, int, int>;

// Predicted triples as a multiset. Constants and concepts share the string
// slot; the second variable slot is -1 for unary triples.
std::map<TripleKey, int> PredictedIndex(const TripleSet &predicted) {
  std::map<TripleKey, int> counts;
  for (const auto &t : predicted.instances) {
    ++counts[{0, t.concept_label, t.variable, -1}];
  }
  for (const auto &t : predicted.relations) {
    ++counts[{1, t.label, t.source, t.target}];
  }
  for (const auto &t : predicted.attributes) {
    ++counts[{2, t.label + '\x1f' + t.value, t.variable, -1}];
  }
  return counts;
}

int CountMatches(const TripleSet &gold, const std::map<TripleKey, int> &index,
                 const VariableMapping &mapping) {
  std::map<TripleKey, int> images;
  for (const auto &t : gold.instances) {
    int j = mapping[t.variable];
    if (j >= 0) ++images[{0, t.concept_label, j, -1}];
  }
  for (const auto &t : gold.relations) {
    int a = mapping[t.source], b = mapping[t.target];
    if (a >= 0 && b >= 0) ++images[{1, t.label, a, b}];
  }
  for (const auto &t : gold.attributes) {
    int j = mapping[t.variable];
    if (j >= 0) ++images[{2, t.label + '\x1f' + t.value, j, -1}];
  }
  int matched = 0;
  for (const auto &[key, count] : images) {
    auto it = index.find(key);
    if (it != index.end()) matched += std::min(count, it->second);
  }
  return matched;
}

void CheckMapping(const TripleSet &gold, const TripleSet &predicted,
                  const VariableMapping &mapping) {
  if (mapping.size() != gold.variables.size()) {
    throw Error("mapping", "mapping size does not match gold variables");
  }
  std::vector<bool> used(predicted.variables.size(), false);
  for (int j : mapping) {
    if (j < -1 || j >= static_cast<int>(predicted.variables.size())) {
      throw Error("mapping", "mapping target out of range");
    }
    if (j >= 0) {
      if (used[j]) throw Error("mapping", "mapping is not injective");
      used[j] = true;
    }
  }
}

// Match counts split by the variables they depend on. A gold triple on
// one variable contributes through `unary`, one on an ordered pair of
// variables through a per-pair table. Because mappings are injective, images
// of triples on different variables (or pairs) never collide, so the
// multiset count decomposes into these terms exactly.
class MatchTables {
 public:
  MatchTables(const TripleSet &gold, const TripleSet &predicted)
      : n_(static_cast<int>(gold.variables.size())),
        m_(static_cast<int>(predicted.variables.size())),
        unary_(n_, std::vector<int>(m_, 0)),
        incident_(n_) {
    // Unary keys per variable with counts, for both sides.
    using UnaryKey = std::pair<int, std::string>;
    std::vector<std::map<UnaryKey, int>> gold_unary(n_), pred_unary(m_);
    for (const auto &t : gold.instances) ++gold_unary[t.variable][{0, t.concept_label}];
    for (const auto &t : gold.attributes) {
      ++gold_unary[t.variable][{2, t.label + '\x1f' + t.value}];
    }
    for (const auto &t : predicted.instances) {
      ++pred_unary[t.variable][{0, t.concept_label}];
    }
    for (const auto &t : predicted.attributes) {
      ++pred_unary[t.variable][{2, t.label + '\x1f' + t.value}];
    }
    for (int v = 0; v < n_; ++v) {
      for (int j = 0; j < m_; ++j) {
        int score = 0;
        for (const auto &[key, count] : gold_unary[v]) {
          auto it = pred_unary[j].find(key);
          if (it != pred_unary[j].end()) score += std::min(count, it->second);
        }
        unary_[v][j] = score;
      }
    }

    std::map<std::pair<int, int>, std::map<std::string, int>> gold_pairs;
    for (const auto &t : gold.relations) ++gold_pairs[{t.source, t.target}][t.label];
    std::map<std::pair<int, int>, std::map<std::string, int>> pred_pairs;
    for (const auto &t : predicted.relations) {
      ++pred_pairs[{t.source, t.target}][t.label];
    }
    for (const auto &[vars, labels] : gold_pairs) {
      Pair pair;
      pair.a = vars.first;
      pair.b = vars.second;
      pair.score.assign(static_cast<std::size_t>(m_) * m_, 0);
      for (const auto &[pred_vars, pred_labels] : pred_pairs) {
        int score = 0;
        for (const auto &[label, count] : labels) {
          auto it = pred_labels.find(label);
          if (it != pred_labels.end()) score += std::min(count, it->second);
        }
        pair.score[pred_vars.first * m_ + pred_vars.second] = score;
      }
      int id = static_cast<int>(pairs_.size());
      pairs_.push_back(std::move(pair));
      incident_[vars.first].push_back(id);
      if (vars.second != vars.first) incident_[vars.second].push_back(id);
    }
  }

  int gold_size() const { return n_; }
  int predicted_size() const { return m_; }

  int Total(const VariableMapping &mapping) const {
    int total = 0;
    for (int v = 0; v < n_; ++v) {
      if (mapping[v] >= 0) total += unary_[v][mapping[v]];
    }
    for (const Pair &pair : pairs_) total += PairScore(pair, mapping);
    return total;
  }

  // Contribution of every term touching variables v or w (w may be -1).
  int Local(const VariableMapping &mapping, int v, int w) const {
    int total = 0;
    if (mapping[v] >= 0) total += unary_[v][mapping[v]];
    for (int id : incident_[v]) total += PairScore(pairs_[id], mapping);
    if (w >= 0) {
      if (mapping[w] >= 0) total += unary_[w][mapping[w]];
      for (int id : incident_[w]) {
        const Pair &pair = pairs_[id];
        if (pair.a == v || pair.b == v) continue;
        total += PairScore(pair, mapping);
      }
    }
    return total;
  }

 private:
  struct Pair {
    int a;
    int b;
    std::vector<int> score;
  };

  int PairScore(const Pair &pair, const VariableMapping &mapping) const {
    int ja = mapping[pair.a], jb = mapping[pair.b];
    if (ja < 0 || jb < 0) return 0;
    return pair.score[ja * m_ + jb];
  }

  int n_;
  int m_;
  std::vector<std::vector<int>> unary_;
  std::vector<Pair> pairs_;
  std::vector<std::vector<int>> incident_;
};

VariableMapping GreedyConceptMapping(const TripleSet &gold,
                                     const TripleSet &predicted) {
  VariableMapping mapping(gold.variables.size(), -1);
  std::vector<bool> used(predicted.variables.size(), false);
  for (const auto &g : gold.instances) {
    for (const auto &p : predicted.instances) {
      if (!used[p.variable] && p.concept_label == g.concept_label) {
        mapping[g.variable] = p.variable;
        used[p.variable] = true;
        break;
      }
    }
  }
  return mapping;
}

VariableMapping RandomMapping(int n, int m, std::mt19937_64 &rng) {
  std::vector<int> pool(std::max(n, m), -1);
  for (int j = 0; j < m; ++j) pool[j] = j;
  // Fisher-Yates with explicit arithmetic so results do not depend on the
  // standard library's shuffle.
  for (std::size_t i = pool.size(); i > 1; --i) {
    std::size_t k = static_cast<std::size_t>(rng() % i);
    std::swap(pool[i - 1], pool[k]);
  }
  return VariableMapping(pool.begin(), pool.begin() + n);
}

// Applies the best improving move until none improves. Returns the count.
int Climb(const MatchTables &tables, VariableMapping &mapping) {
  const int n = tables.gold_size(), m = tables.predicted_size();
  std::vector<int> owner(m, -1);
  for (int v = 0; v < n; ++v) {
    if (mapping[v] >= 0) owner[mapping[v]] = v;
  }
  int total = tables.Total(mapping);
  while (true) {
    int best_delta = 0;
    int best_v = -1, best_w = -1, best_j = -1;
    for (int v = 0; v < n; ++v) {
      const int before = tables.Local(mapping, v, -1);
      const int old = mapping[v];
      for (int j = 0; j < m; ++j) {
        if (owner[j] >= 0) continue;
        mapping[v] = j;
        int delta = tables.Local(mapping, v, -1) - before;
        mapping[v] = old;
        if (delta > best_delta) {
          best_delta = delta;
          best_v = v;
          best_w = -1;
          best_j = j;
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      for (int w = v + 1; w < n; ++w) {
        if (mapping[v] == mapping[w]) continue;  // both unmapped
        const int before = tables.Local(mapping, v, w);
        std::swap(mapping[v], mapping[w]);
        int delta = tables.Local(mapping, v, w) - before;
        std::swap(mapping[v], mapping[w]);
        if (delta > best_delta) {
          best_delta = delta;
          best_v = v;
          best_w = w;
          best_j = -1;
        }
      }
    }
    if (best_delta <= 0) break;
    if (best_w < 0) {
      if (mapping[best_v] >= 0) owner[mapping[best_v]] = -1;
      mapping[best_v] = best_j;
      owner[best_j] = best_v;
    } else {
      std::swap(mapping[best_v], mapping[best_w]);
      if (mapping[best_v] >= 0) owner[mapping[best_v]] = best_v;
      if (mapping[best_w] >= 0) owner[mapping[best_w]] = best_w;
    }
    total += best_delta;
  }
  return total;
}

}  // namespace

int MatchedCount(const TripleSet &gold, const TripleSet &predicted,
                 const VariableMapping &mapping) {
  CheckMapping(gold, predicted, mapping);
  return CountMatches(gold, PredictedIndex(predicted), mapping);
}

SmatchScore MakeScore(int matched, int gold_total, int predicted_total,
                      VariableMapping mapping) {
  SmatchScore score;
  score.matched = matched;
  score.gold_total = gold_total;
  score.predicted_total = predicted_total;
  score.precision =
      predicted_total > 0 ? static_cast<double>(matched) / predicted_total : 0.0;
  score.recall = gold_total > 0 ? static_cast<double>(matched) / gold_total : 0.0;
  double sum = score.precision + score.recall;
  score.f1 = sum > 0.0 ? 2.0 * score.precision * score.recall / sum : 0.0;
  score.best_mapping = std::move(mapping);
  return score;
}

SmatchScore SmatchHillClimb(const AmrGraph &gold, const AmrGraph &predicted,
                            int restarts, std::uint64_t seed) {
  if (restarts < 1) throw Error("smatch", "restarts must be at least 1");
  const TripleSet g = ExtractTriples(gold);
  const TripleSet p = ExtractTriples(predicted);
  const MatchTables tables(g, p);
  const int n = static_cast<int>(g.variables.size());
  const int m = static_cast<int>(p.variables.size());

  int best = -1;
  VariableMapping best_mapping;
  for (int restart = 0; restart < restarts; ++restart) {
    VariableMapping mapping;
    if (restart == 0) {
      mapping = GreedyConceptMapping(g, p);
    } else {
      std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL +
                          static_cast<std::uint64_t>(restart));
      mapping = RandomMapping(n, m, rng);
    }
    int matched = Climb(tables, mapping);
    if (matched > best || (matched == best && mapping < best_mapping)) {
      best = matched;
      best_mapping = mapping;
    }
  }
  return MakeScore(best, static_cast<int>(g.size()), static_cast<int>(p.size()),
                   std::move(best_mapping));
}

SmatchScore SmatchBruteForce(const AmrGraph &gold, const AmrGraph &predicted) {
  const TripleSet g = ExtractTriples(gold);
  const TripleSet p = ExtractTriples(predicted);
  const int n = static_cast<int>(g.variables.size());
  const int m = static_cast<int>(p.variables.size());
  if (std::min(n, m) > kBruteForceLimit) {
    throw Error("size-guard", "brute-force Smatch needs at most " +
                                  std::to_string(kBruteForceLimit) +
                                  " variables on one side");
  }
  // Number of maximal injective mappings: max!/(max-min)!.
  double mappings = 1.0;
  for (int i = 0; i < std::min(n, m); ++i) mappings *= std::max(n, m) - i;
  if (mappings > 1e8) {
    throw Error("size-guard", "brute-force Smatch would enumerate too many "
                              "mappings");
  }

  const std::map<TripleKey, int> index = PredictedIndex(p);
  // Leaving a variable unmapped never gains a match, so only mappings that
  // map min(n, m) variables are enumerated.
  const int unmapped_quota = std::max(0, n - m);
  VariableMapping mapping(n, -1);
  std::vector<bool> used(m, false);
  int best = -1;
  VariableMapping best_mapping;

  auto search = [&](auto &&self, int v, int unmapped) -> void {
    if (v == n) {
      int matched = CountMatches(g, index, mapping);
      if (matched > best || (matched == best && mapping < best_mapping)) {
        best = matched;
        best_mapping = mapping;
      }
      return;
    }
    if (unmapped < unmapped_quota) {
      mapping[v] = -1;
      self(self, v + 1, unmapped + 1);
    }
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      used[j] = true;
      mapping[v] = j;
      self(self, v + 1, unmapped);
      used[j] = false;
    }
    mapping[v] = -1;
  };
  search(search, 0, 0);
  return MakeScore(best, static_cast<int>(g.size()), static_cast<int>(p.size()),
                   std::move(best_mapping));
}

}  // namespace amrtext
