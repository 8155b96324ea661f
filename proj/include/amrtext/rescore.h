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

#ifndef AMRTEXT_RESCORE_H_
#define AMRTEXT_RESCORE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amrtext/graph.h"
#include "amrtext/smatch.h"

namespace amrtext {

struct Candidate {
  std::string text;
  double model_log_score = 0.0;
};

// Decoder output for one gold graph, in model ranking order.
struct CandidateSet {
  std::string id;
  AmrGraph gold;
  std::vector<Candidate> candidates;
};

// Throws Error("candidate-set") for an empty list or scores that increase
// down the list.
void CheckCandidateSet(const CandidateSet &set);

// Text-to-AMR parser used to close the cycle. One result per input
// sentence; std::nullopt marks a sentence the parser could not handle.
// Failures of the backend itself throw TransportError.
class ParserBackend {
 public:
  virtual ~ParserBackend() = default;
  virtual std::vector<std::optional<AmrGraph>> ParseBatch(
      const std::vector<std::string> &sentences) = 0;
};

// Runs an external parser through the shell, once per batch.
//
// Pipe mode (default): the sentences are fed one per line on standard input
// and the parser writes one PENMAN block per sentence, blocks separated by
// blank lines. Lines starting with `#` inside a block are ignored; a block
// holding no graph (for example just `# ::failed`) or one that does not
// parse marks that sentence as failed.
//
// File mode: when the command contains `{input}` and `{output}`, they are
// replaced by temporary file paths; the sentence file is written first and
// the output file is read back in the same block format.
//
// Empty sentences are not sent to the parser and count as failures.
class SubprocessParserBackend : public ParserBackend {
 public:
  explicit SubprocessParserBackend(std::string command)
      : command_(std::move(command)) {}

  std::vector<std::optional<AmrGraph>> ParseBatch(
      const std::vector<std::string> &sentences) override;

 private:
  std::string command_;
};

// Parses the block format written by parsers: one entry per block.
std::vector<std::optional<AmrGraph>> ParseBlocks(const std::string &text);

enum class SelectionReason { kSmatchMax, kTieBrokenByRank, kAllParsesFailed };

std::string SelectionReasonName(SelectionReason reason);

struct RescoreResult {
  // Smatch F1 of each candidate's parse against the gold graph; 0 for
  // candidates whose parse failed.
  std::vector<double> f1;
  std::vector<bool> parsed;
  std::size_t selected_index = 0;
  SelectionReason reason = SelectionReason::kAllParsesFailed;
};

struct RescoreOptions {
  int restarts = kDefaultRestarts;
  std::uint64_t seed = 0;
};

// Picks the candidate whose parse is closest to the gold graph by Smatch
// F1. Ties go to the best-ranked candidate; if no candidate parsed, the
// first one is kept.
RescoreResult Rescore(const CandidateSet &set, ParserBackend &backend,
                      const RescoreOptions &options = {});

// Selection from already-parsed candidates.
RescoreResult SelectByCycleConsistency(
    const CandidateSet &set, const std::vector<std::optional<AmrGraph>> &parses,
    const RescoreOptions &options);

struct RescoreSummary {
  std::size_t sets = 0;
  std::size_t changed = 0;  // sets whose selection is not the top candidate
  double selection_change_rate = 0.0;
  double mean_selected_f1 = 0.0;
  std::size_t backend_calls = 0;
};

struct CorpusRescore {
  std::vector<RescoreResult> results;
  RescoreSummary summary;
};

// Rescores every set, sending candidate sentences to the backend in batches
// of at most `batch_size` sentences (0: everything in one call). A
// TransportError from the backend is rethrown with the batch index.
CorpusRescore RescoreCorpus(const std::vector<CandidateSet> &sets,
                            ParserBackend &backend,
                            const RescoreOptions &options = {},
                            std::size_t batch_size = 0);

struct BeamRow {
  std::string set_id;
  int rank = 0;
  double model_log_score = 0.0;
  std::string text;
};

// Reads `set_id<TAB>rank<TAB>model_log_score<TAB>text` lines.
std::vector<BeamRow> ReadBeamsTsv(const std::string &path);
std::string FormatBeamsTsv(const std::vector<BeamRow> &rows);

}  // namespace amrtext

#endif  // AMRTEXT_RESCORE_H_
