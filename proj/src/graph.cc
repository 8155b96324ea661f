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

#include "amrtext/graph.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "amrtext/error.h"

namespace amrtext {

const std::string *AmrGraph::ConceptOf(const std::string &variable) const {
  for (const Instance &instance : instances) {
    if (instance.variable == variable) return &instance.concept_label;
  }
  return nullptr;
}

bool AmrGraph::HasVariable(const std::string &variable) const {
  return ConceptOf(variable) != nullptr;
}

std::vector<Edge> AmrGraph::Relations() const {
  std::vector<Edge> result;
  for (const Edge &edge : edges) {
    if (!edge.constant) result.push_back(edge);
  }
  return result;
}

std::vector<Edge> AmrGraph::Attributes() const {
  std::vector<Edge> result;
  for (const Edge &edge : edges) {
    if (edge.constant) result.push_back(edge);
  }
  return result;
}

std::size_t AmrGraph::RelationCount() const {
  return std::count_if(edges.begin(), edges.end(),
                       [](const Edge &e) { return !e.constant; });
}

std::size_t AmrGraph::AttributeCount() const {
  return edges.size() - RelationCount();
}

bool IsInverseRole(const std::string &role) {
  static const std::set<std::string> kNotInverted = {
      "consist-of", "prep-out-of", "prep-on-behalf-of"};
  return role.size() > 3 && role.ends_with("-of") &&
         kNotInverted.count(role) == 0;
}

std::string CanonicalRole(const std::string &role) {
  return IsInverseRole(role) ? role.substr(0, role.size() - 3) : role;
}

Edge CanonicalEdge(const Edge &edge) {
  if (edge.constant || !IsInverseRole(edge.role)) return edge;
  return Edge{edge.target, CanonicalRole(edge.role), edge.source, false};
}

std::vector<std::string> ValidationReport::Findings() const {
  std::vector<std::string> lines;
  if (missing_root) lines.push_back("root: root variable has no instance");
  for (const auto &cycle : cycles) {
    std::string line = "cycle:";
    for (const auto &v : cycle) line += " " + v;
    lines.push_back(line);
  }
  for (const auto &v : unreachable) lines.push_back("unreachable: " + v);
  for (const auto &v : duplicate_instances) {
    lines.push_back("duplicate-instance: " + v);
  }
  for (const auto &v : undefined_references) {
    lines.push_back("undefined-reference: " + v);
  }
  return lines;
}

namespace {

// Strongly connected components that contain a cycle (size > 1 or a
// self-loop), each sorted, in order of their smallest variable.
std::vector<std::vector<std::string>> FindCycles(
    const std::vector<std::string> &nodes,
    const std::map<std::string, std::vector<std::string>> &successors) {
  std::map<std::string, int> index, lowlink;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> result;
  int counter = 0;

  std::function<void(const std::string &)> connect =
      [&](const std::string &v) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        bool self_loop = false;
        auto it = successors.find(v);
        if (it != successors.end()) {
          for (const std::string &w : it->second) {
            if (w == v) self_loop = true;
            if (!index.count(w)) {
              connect(w);
              lowlink[v] = std::min(lowlink[v], lowlink[w]);
            } else if (on_stack.count(w)) {
              lowlink[v] = std::min(lowlink[v], index[w]);
            }
          }
        }
        if (lowlink[v] == index[v]) {
          std::vector<std::string> component;
          std::string w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack.erase(w);
            component.push_back(w);
          } while (w != v);
          if (component.size() > 1 || self_loop) {
            std::sort(component.begin(), component.end());
            result.push_back(component);
          }
        }
      };

  for (const std::string &v : nodes) {
    if (!index.count(v)) connect(v);
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

ValidationReport Validate(const AmrGraph &graph) {
  ValidationReport report;
  std::set<std::string> defined;
  std::vector<std::string> nodes;
  for (const Instance &instance : graph.instances) {
    if (!defined.insert(instance.variable).second) {
      report.duplicate_instances.push_back(instance.variable);
    } else {
      nodes.push_back(instance.variable);
    }
  }
  if (!defined.count(graph.root)) report.missing_root = true;

  std::set<std::string> undefined;
  std::map<std::string, std::vector<std::string>> stored, canonical;
  for (const Edge &edge : graph.edges) {
    if (!defined.count(edge.source)) undefined.insert(edge.source);
    if (edge.constant) continue;
    if (!defined.count(edge.target)) {
      undefined.insert(edge.target);
      continue;
    }
    stored[edge.source].push_back(edge.target);
    Edge c = CanonicalEdge(edge);
    canonical[c.source].push_back(c.target);
  }
  report.undefined_references.assign(undefined.begin(), undefined.end());

  std::set<std::string> reached;
  if (!report.missing_root) {
    std::vector<std::string> frontier = {graph.root};
    reached.insert(graph.root);
    while (!frontier.empty()) {
      std::string v = frontier.back();
      frontier.pop_back();
      for (const std::string &w : stored[v]) {
        if (reached.insert(w).second) frontier.push_back(w);
      }
    }
  }
  for (const std::string &v : nodes) {
    if (!reached.count(v)) report.unreachable.push_back(v);
  }

  report.cycles = FindCycles(nodes, canonical);
  return report;
}

void WalkDepthFirst(const AmrGraph &graph, GraphVisitor &visitor) {
  std::map<std::string, const std::string *> concepts;
  for (const Instance &instance : graph.instances) {
    if (!concepts.emplace(instance.variable, &instance.concept_label).second) {
      throw InvalidGraphError("duplicate instance for variable '" +
                              instance.variable + "'");
    }
  }
  std::map<std::string, std::vector<const Edge *>> outgoing;
  for (const Edge &edge : graph.edges) {
    if (!concepts.count(edge.source) ||
        (!edge.constant && !concepts.count(edge.target))) {
      throw InvalidGraphError("edge :" + edge.role +
                              " refers to an undefined variable");
    }
    outgoing[edge.source].push_back(&edge);
  }
  if (!concepts.count(graph.root)) {
    throw InvalidGraphError("root variable '" + graph.root +
                            "' has no instance");
  }

  std::set<std::string> visited;
  std::function<void(const std::string &, const std::string &)> visit =
      [&](const std::string &role, const std::string &variable) {
        bool first = visited.insert(variable).second;
        visitor.EnterNode(role, variable, *concepts[variable], first);
        if (first) {
          for (const Edge *edge : outgoing[variable]) {
            if (edge->constant) {
              visitor.Constant(edge->role, edge->target);
            } else {
              visit(edge->role, edge->target);
            }
          }
        }
        visitor.ExitNode(variable, first);
      };
  visit("", graph.root);

  if (visited.size() != concepts.size()) {
    for (const auto &[variable, unused] : concepts) {
      if (!visited.count(variable)) {
        throw InvalidGraphError("variable '" + variable +
                                "' is not reachable from the root");
      }
    }
  }
}

bool GraphEqual(const AmrGraph &a, const AmrGraph &b) {
  if (a.root != b.root) return false;
  if (a.instances.size() != b.instances.size()) return false;
  if (a.edges.size() != b.edges.size()) return false;
  std::vector<Instance> ia = a.instances, ib = b.instances;
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  if (ia != ib) return false;
  std::vector<Edge> ea = a.edges, eb = b.edges;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

}  // namespace amrtext
