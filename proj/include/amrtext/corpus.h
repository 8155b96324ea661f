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

#ifndef AMRTEXT_CORPUS_H_
#define AMRTEXT_CORPUS_H_

#include <map>
#include <string>
#include <vector>

#include "amrtext/graph.h"

namespace amrtext {

// One AMR-bank block: metadata comment lines followed by a PENMAN graph.
struct CorpusEntry {
  std::string id;        // from `# ::id`
  std::string sentence;  // from `# ::snt`, empty when absent
  AmrGraph graph;
  std::string raw_block;  // the block as read, without trailing blank lines

  friend bool operator==(const CorpusEntry &a, const CorpusEntry &b) {
    return a.id == b.id && a.sentence == b.sentence && a.raw_block == b.raw_block &&
           GraphEqual(a.graph, b.graph);
  }
};

// Builds an entry (and its raw block) from parts.
CorpusEntry MakeEntry(const std::string &id, const std::string &sentence,
                      const AmrGraph &graph);

struct CorpusIssue {
  std::size_t block = 0;  // 0-based block index in the file
  int line = 0;           // 1-based line in the file
  std::string message;
};

struct CorpusReadResult {
  std::vector<CorpusEntry> entries;
  std::vector<CorpusIssue> errors;    // blocks that failed to parse
  std::vector<CorpusIssue> warnings;  // e.g. missing ::snt
};

// Splits text into blocks on blank lines. Blocks that only hold comments
// (file headers) are skipped. Throws Error("corpus") if no block parses.
CorpusReadResult ParseCorpus(const std::string &text);

// As ParseCorpus on the file contents. Throws Error("io") when unreadable.
CorpusReadResult ReadCorpus(const std::string &path);

// Raw blocks separated by blank lines.
std::string WriteCorpus(const std::vector<CorpusEntry> &entries);

// Value of a `::key` field in a metadata line, or empty.
std::string MetadataField(const std::string &comment_line,
                          const std::string &key);

struct CorpusStats {
  std::size_t instances = 0;
  double mean_variables = 0.0;
  std::size_t max_variables = 0;
  std::size_t relation_labels = 0;  // distinct role labels
  std::map<std::size_t, std::size_t> variable_histogram;  // vars -> graphs
  std::map<std::size_t, std::size_t> token_histogram;     // tokens -> sentences
};

CorpusStats ComputeCorpusStats(const std::vector<CorpusEntry> &entries);

// Stats for named splits (train/dev/test), keyed by split name.
using SplitStats = std::map<std::string, CorpusStats>;

}  // namespace amrtext

#endif  // AMRTEXT_CORPUS_H_
