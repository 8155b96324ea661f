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

#ifndef AMRTEXT_PIPELINE_H_
#define AMRTEXT_PIPELINE_H_

#include <memory>
#include <string>
#include <vector>

#include "amrtext/config.h"
#include "amrtext/corpus.h"
#include "amrtext/decoder.h"
#include "amrtext/linearize.h"
#include "amrtext/metrics.h"
#include "amrtext/provider.h"
#include "amrtext/rescore.h"

namespace amrtext {

inline constexpr char kEndToken[] = "<EOS>";

// Everything decoding needs, built once from the corpus.
struct PreparedRun {
  std::vector<CorpusEntry> entries;
  SpecialSymbolMap symbols;
  // Linearized AMR followed by the separator, one per entry.
  std::vector<std::vector<std::string>> prompts;
  // Normalized `::snt` tokens, one per entry.
  std::vector<std::vector<std::string>> references;
  std::unique_ptr<TokenDistributionProvider> provider;
  TokenId end_token = 0;
};

// Linearizes the corpus and builds the configured provider. The memorizing
// provider learns each reference after its own prompt; with memorize_rank 2
// it prefers a distractor (the reference rotated left by one token) at
// weight 0.6 over the reference at 0.4.
PreparedRun PrepareRun(const RunConfig &config,
                       std::vector<CorpusEntry> entries);

// Decodes every entry; result i holds the hypotheses for entry i, best
// first. Entries are spread over config.threads workers. Nucleus sampling
// for entry i uses seed config.seed + i.
std::vector<std::vector<Hypothesis>> DecodeEntries(const PreparedRun &run,
                                                   const RunConfig &config);

// Hypothesis tokens as text: end token dropped, trailing repetition
// collapsed, tokens joined by single spaces.
std::string HypothesisText(const PreparedRun &run, const Hypothesis &hypothesis);

struct MetricsPair {
  double bleu = 0.0;
  double chrf = 0.0;
};

// BLEU and chrF++ of hypothesis lines against reference lines, both put
// through NormalizeOutput.
MetricsPair ScoreLines(const std::vector<std::string> &hypotheses,
                       const std::vector<std::string> &references);

struct PipelineResult {
  std::vector<std::string> ids;
  std::vector<std::string> references;  // normalized, joined
  std::vector<std::vector<Candidate>> candidates;  // per entry, best first
  std::vector<std::string> one_best;
  std::vector<std::string> selected;
  std::vector<RescoreResult> selections;  // empty without rescoring
  MetricsPair one_best_metrics;
  MetricsPair selected_metrics;
  RescoreSummary rescore_summary;
};

// Runs the whole pipeline and writes its artifacts to config.output_dir:
//
//   hypotheses.txt   final output, one line per entry
//   onebest.txt      the decoder's top hypothesis per entry
//   references.txt   normalized references
//   beams.tsv        all candidates (set id, rank, log score, text)
//   selections.tsv   rescoring decisions (only with rescore = true)
//   metrics.json     BLEU and chrF++ for one-best and final output
//
// Nothing is written if any stage fails. `backend` overrides the parser
// command when rescoring.
PipelineResult RunPipeline(const RunConfig &config,
                           ParserBackend *backend = nullptr);

}  // namespace amrtext

#endif  // AMRTEXT_PIPELINE_H_
