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

#include "amrtext/linearize.h"

#include <cctype>
#include <set>

#include "amrtext/error.h"
#include "amrtext/penman.h"

namespace amrtext {
namespace {

std::string StripSense(const std::string &concept_label) {
  std::size_t dash = concept_label.rfind('-');
  if (dash == std::string::npos || dash == 0 ||
      dash + 1 == concept_label.size()) {
    return concept_label;
  }
  for (std::size_t i = dash + 1; i < concept_label.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(concept_label[i]))) {
      return concept_label;
    }
  }
  return concept_label.substr(0, dash);
}

class PathCollector : public GraphVisitor {
 public:
  PathCollector(bool with_edges, bool strip_sense)
      : with_edges_(with_edges), strip_sense_(strip_sense) {}

  void EnterNode(const std::string &role, const std::string &,
                 const std::string &concept_label, bool) override {
    if (with_edges_ && !role.empty()) tokens_.push_back(":" + role);
    tokens_.push_back(strip_sense_ ? StripSense(concept_label)
                                   : concept_label);
  }

  void Constant(const std::string &role, const std::string &value) override {
    if (with_edges_) tokens_.push_back(":" + role);
    tokens_.push_back(value);
  }

  std::vector<std::string> Take() { return std::move(tokens_); }

 private:
  bool with_edges_;
  bool strip_sense_;
  std::vector<std::string> tokens_;
};

}  // namespace

std::optional<Representation> RepresentationFromName(const std::string &name) {
  if (name == "nodes") return Representation::kNodesOnly;
  if (name == "dfs") return Representation::kDfsWithEdges;
  if (name == "penman") return Representation::kPenman;
  return std::nullopt;
}

std::string RepresentationName(Representation representation) {
  switch (representation) {
    case Representation::kNodesOnly:
      return "nodes";
    case Representation::kDfsWithEdges:
      return "dfs";
    case Representation::kPenman:
      return "penman";
  }
  return "penman";
}

std::vector<std::string> TokenizePenman(const std::string &text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '"') {
      std::size_t start = i++;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\\') ++i;
        ++i;
      }
      current += text.substr(start, i - start + 1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '(' || c == ')' || c == '/') {
      flush();
      tokens.emplace_back(1, c);
    } else {
      current += c;
    }
  }
  flush();
  return tokens;
}

std::string JoinTokens(const std::vector<std::string> &tokens) {
  std::string out;
  for (const std::string &token : tokens) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

LinearizedAmr Linearize(const AmrGraph &graph, Representation representation,
                        const LinearizeOptions &options) {
  LinearizedAmr result;
  result.representation = representation;
  if (representation == Representation::kPenman) {
    result.tokens = TokenizePenman(SerializePenman(graph));
    return result;
  }
  PathCollector collector(representation == Representation::kDfsWithEdges,
                          options.strip_sense);
  WalkDepthFirst(graph, collector);
  result.tokens = collector.Take();
  return result;
}

SpecialSymbolMap::SpecialSymbolMap(std::string separator,
                                   const std::vector<std::string> &surface_forms)
    : separator_(std::move(separator)) {
  for (const std::string &form : surface_forms) {
    if (form == separator_) {
      throw Error("separator-collision",
                  "separator '" + separator_ + "' is also a reserved form");
    }
    std::string token = "<R" + std::to_string(forms_.size()) + ">";
    if (!reserved_.emplace(form, token).second) {
      throw Error("special-symbols", "duplicate reserved form '" + form + "'");
    }
    forms_.push_back(form);
  }
}

const std::string *SpecialSymbolMap::Lookup(const std::string &form) const {
  auto it = reserved_.find(form);
  return it == reserved_.end() ? nullptr : &it->second;
}

std::vector<std::string> AssembleJoint(const LinearizedAmr &amr,
                                       const std::vector<std::string> &text,
                                       const SpecialSymbolMap &symbols) {
  std::vector<std::string> stream;
  stream.reserve(amr.tokens.size() + text.size() + 1);
  auto append = [&](const std::string &token) {
    if (token == symbols.separator()) {
      throw Error("separator-collision",
                  "separator '" + token + "' occurs as an ordinary token");
    }
    const std::string *reserved = symbols.Lookup(token);
    stream.push_back(reserved ? *reserved : token);
  };
  for (const std::string &token : amr.tokens) append(token);
  stream.push_back(symbols.separator());
  for (const std::string &token : text) append(token);
  return stream;
}

SpecialSymbolMap ExtractArcVocabulary(const std::vector<AmrGraph> &corpus,
                                      const std::string &separator) {
  std::set<std::string> labels = {kRootLabel};
  for (const AmrGraph &graph : corpus) {
    for (const Edge &edge : graph.edges) labels.insert(":" + edge.role);
  }
  return SpecialSymbolMap(separator,
                          std::vector<std::string>(labels.begin(), labels.end()));
}

}  // namespace amrtext
