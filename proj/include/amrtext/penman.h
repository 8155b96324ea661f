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

#ifndef AMRTEXT_PENMAN_H_
#define AMRTEXT_PENMAN_H_

#include <string>
#include <string_view>

#include "amrtext/graph.h"

namespace amrtext {

// Parses one parenthesized PENMAN expression. The first variable becomes
// the root. A bare symbol in target position is a reference when it names a
// variable defined anywhere in the graph; otherwise it is a constant, except
// that an undefined single letter with optional digits (`b`, `x2`) is
// reported as a reference to an undefined variable. Alignment suffixes
// (`~e.3`) are dropped. Throws PenmanError.
AmrGraph ParsePenman(std::string_view text);

struct SerializeOptions {
  // Put every role on its own line, indented by nesting depth.
  bool indent = false;
};

// Writes the graph depth-first from the root. The first visit to a variable
// defines it and later visits are bare references. Output is deterministic.
// Throws InvalidGraphError when the graph cannot be written as one tree.
std::string SerializePenman(const AmrGraph &graph,
                            const SerializeOptions &options = {});

}  // namespace amrtext

#endif  // AMRTEXT_PENMAN_H_
