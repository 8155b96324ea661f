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

#ifndef AMRTEXT_LINEARIZE_H_
#define AMRTEXT_LINEARIZE_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amrtext/graph.h"

namespace amrtext {

enum class Representation {
  kNodesOnly,     // concepts in depth-first order
  kDfsWithEdges,  // role and concept tokens along the depth-first path
  kPenman,        // the PENMAN string split into tokens
};

// "nodes", "dfs" or "penman".
std::optional<Representation> RepresentationFromName(const std::string &name);
std::string RepresentationName(Representation representation);

struct LinearizeOptions {
  // Drop numeric sense suffixes (`recommend-01` -> `recommend`) in the two
  // variable-free representations. Penman output is never altered.
  bool strip_sense = false;
};

struct LinearizedAmr {
  std::vector<std::string> tokens;
  Representation representation = Representation::kPenman;
};

// Variables appear only in the Penman representation. In the other two a
// re-entrant node repeats its concept label without being expanded again,
// and constants are emitted as nodes. Role tokens carry their colon.
LinearizedAmr Linearize(const AmrGraph &graph, Representation representation,
                        const LinearizeOptions &options = {});

// Splits PENMAN text into tokens: parentheses and `/` stand alone, quoted
// strings stay whole.
std::vector<std::string> TokenizePenman(const std::string &text);

std::string JoinTokens(const std::vector<std::string> &tokens);

inline constexpr char kRootLabel[] = ":root";
inline constexpr char kDefaultSeparator[] = "<SEP>";

// Separator token plus reserved tokens for AMR surface forms that must not
// be read literally by the language model (role labels and `:root`).
class SpecialSymbolMap {
 public:
  SpecialSymbolMap() : separator_(kDefaultSeparator) {}
  // Reserved tokens are assigned in the order given, as `<R0>`, `<R1>`, ...
  // Throws Error on duplicate forms or if the separator is a surface form.
  SpecialSymbolMap(std::string separator,
                   const std::vector<std::string> &surface_forms);

  const std::string &separator() const { return separator_; }
  const std::map<std::string, std::string> &reserved() const {
    return reserved_;
  }
  // Reserved token for `form`, or nullptr.
  const std::string *Lookup(const std::string &form) const;
  // Surface forms in assignment order.
  const std::vector<std::string> &forms() const { return forms_; }

 private:
  std::string separator_;
  std::map<std::string, std::string> reserved_;
  std::vector<std::string> forms_;
};

// AMR tokens, then the separator, then the text tokens, with reserved
// surface forms replaced. Throws Error("separator-collision") if the
// separator occurs among the ordinary tokens.
std::vector<std::string> AssembleJoint(const LinearizedAmr &amr,
                                       const std::vector<std::string> &text,
                                       const SpecialSymbolMap &symbols);

// Every distinct role label in the corpus, written `:label`, plus `:root`,
// in sorted order.
SpecialSymbolMap ExtractArcVocabulary(const std::vector<AmrGraph> &corpus,
                                      const std::string &separator =
                                          kDefaultSeparator);

}  // namespace amrtext

#endif  // AMRTEXT_LINEARIZE_H_
