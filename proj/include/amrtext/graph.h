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

#ifndef AMRTEXT_GRAPH_H_
#define AMRTEXT_GRAPH_H_

#include <string>
#include <vector>

namespace amrtext {

// A variable and the concept it instantiates, e.g. (b / boy).
struct Instance {
  std::string variable;
  std::string concept_label;

  friend bool operator==(const Instance &, const Instance &) = default;
  friend auto operator<=>(const Instance &, const Instance &) = default;
};

// An outgoing role of a node. When `constant` is false the target names a
// variable (a relation); otherwise it is a constant value such as `-`, `5`
// or `"Paris"` (an attribute). Roles are stored without the leading colon
// and exactly as written, so inverse roles keep their `-of` suffix.
struct Edge {
  std::string source;
  std::string role;
  std::string target;
  bool constant = false;

  friend bool operator==(const Edge &, const Edge &) = default;
  friend auto operator<=>(const Edge &, const Edge &) = default;
};

// Rooted, directed, edge-labeled AMR graph. Edges are kept in document order
// (relations and attributes interleaved) so that serialization reproduces
// the order the graph was read in. The struct itself does not enforce the
// structural invariants; ParsePenman only builds valid graphs and Validate
// reports what is wrong with hand-built ones.
struct AmrGraph {
  std::string root;
  std::vector<Instance> instances;
  std::vector<Edge> edges;

  // Concept of `variable`, or nullptr when it has no instance.
  const std::string *ConceptOf(const std::string &variable) const;
  bool HasVariable(const std::string &variable) const;

  std::vector<Edge> Relations() const;
  std::vector<Edge> Attributes() const;
  std::size_t RelationCount() const;
  std::size_t AttributeCount() const;
};

// True for roles written in inverted form (`ARG0-of`). A few roles end in
// `-of` without being inversions (`consist-of`, `prep-out-of`,
// `prep-on-behalf-of`).
bool IsInverseRole(const std::string &role);

// The role with its inversion undone: `ARG0-of` -> `ARG0`.
std::string CanonicalRole(const std::string &role);

// An edge between two variables with any inversion undone, so that
// `x :ARG0-of y` becomes `y :ARG0 x`. Constant edges are returned as is.
Edge CanonicalEdge(const Edge &edge);

struct ValidationReport {
  std::vector<std::vector<std::string>> cycles;
  std::vector<std::string> unreachable;
  std::vector<std::string> duplicate_instances;
  std::vector<std::string> undefined_references;
  bool missing_root = false;

  bool ok() const {
    return cycles.empty() && unreachable.empty() &&
           duplicate_instances.empty() && undefined_references.empty() &&
           !missing_root;
  }
  // One human-readable line per finding.
  std::vector<std::string> Findings() const;
};

// Checks the graph invariants. Directed cycles are looked for after
// canonicalizing inverse roles; reachability follows edges as stored, which
// is how a PENMAN nesting reaches every node from the root.
ValidationReport Validate(const AmrGraph &graph);

// Callbacks for a depth-first walk from the root along edges as stored,
// visiting outgoing edges in document order. A variable is expanded on its
// first visit only; later visits are reported with `first_visit` false and
// not descended into.
class GraphVisitor {
 public:
  virtual ~GraphVisitor() = default;
  // `role` is empty for the root.
  virtual void EnterNode(const std::string & /*role*/,
                         const std::string & /*variable*/,
                         const std::string & /*concept_label*/,
                         bool /*first_visit*/) {}
  virtual void ExitNode(const std::string & /*variable*/, bool /*first_visit*/) {}
  virtual void Constant(const std::string & /*role*/,
                        const std::string & /*value*/) {}
};

// Walks the graph. Throws InvalidGraphError if the root or a referenced
// variable has no instance, or if some variable is never reached.
void WalkDepthFirst(const AmrGraph &graph, GraphVisitor &visitor);

// Literal equality: same root, same instance set and same edge multisets.
// Variable names are compared as strings, so alpha-renamed graphs differ.
bool GraphEqual(const AmrGraph &a, const AmrGraph &b);

}  // namespace amrtext

#endif  // AMRTEXT_GRAPH_H_
