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

#include "amrtext/pipeline.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "amrtext/error.h"

namespace amrtext {
namespace {

[[noreturn]] void FailEntry(const CorpusEntry &entry, const Error &e) {
  throw Error(e.code(), "entry " + entry.id + ": " + e.what());
}

std::vector<std::string> Distractor(const std::vector<std::string> &reference) {
  if (reference.size() < 2) return reference;
  std::vector<std::string> rotated(reference.begin() + 1, reference.end());
  rotated.push_back(reference.front());
  return rotated;
}

std::unique_ptr<TokenDistributionProvider> BuildProvider(
    const RunConfig &config, const PreparedRun &run) {
  if (config.provider == ProviderKind::kTable) {
    return TableProvider::FromFile(config.provider_file);
  }

  Vocabulary vocabulary;
  vocabulary.Add(kEndToken);
  vocabulary.Add(run.symbols.separator());
  for (std::size_t i = 0; i < run.entries.size(); ++i) {
    for (const std::string &t : run.prompts[i]) vocabulary.Add(t);
    for (const std::string &t : run.references[i]) vocabulary.Add(t);
  }

  switch (config.provider) {
    case ProviderKind::kUniform:
      return std::make_unique<UniformProvider>(std::move(vocabulary));
    case ProviderKind::kNgram: {
      std::vector<std::vector<std::string>> streams;
      for (std::size_t i = 0; i < run.entries.size(); ++i) {
        std::vector<std::string> stream = run.prompts[i];
        stream.insert(stream.end(), run.references[i].begin(),
                      run.references[i].end());
        streams.push_back(std::move(stream));
      }
      return NgramProvider::Train(streams, config.ngram_order, config.add_k,
                                  kEndToken, vocabulary.tokens());
    }
    case ProviderKind::kMemorize:
    default: {
      const TokenId separator = vocabulary.Id(run.symbols.separator());
      const TokenId end = vocabulary.Id(kEndToken);
      auto provider = std::make_unique<MemorizingProvider>(
          vocabulary, separator, end, config.smoothing);
      for (std::size_t i = 0; i < run.entries.size(); ++i) {
        const std::vector<TokenId> prompt = vocabulary.Encode(run.prompts[i]);
        const std::vector<std::string> &reference = run.references[i];
        std::vector<std::string> distractor = Distractor(reference);
        if (config.memorize_rank == 2 && distractor != reference) {
          provider->Memorize(prompt, vocabulary.Encode(reference), 0.4);
          provider->Memorize(prompt, vocabulary.Encode(distractor), 0.6);
        } else {
          provider->Memorize(prompt, vocabulary.Encode(reference), 1.0);
        }
      }
      return provider;
    }
  }
}

std::string JoinLines(const std::vector<std::string> &lines) {
  std::string out;
  for (const std::string &line : lines) out += line + '\n';
  return out;
}

void WriteFile(const std::filesystem::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error("io", "cannot write '" + path.string() + "'");
}

std::string FormatSelections(const PipelineResult &result) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  out << "id\tselected\treason\tf1\n";
  for (std::size_t i = 0; i < result.selections.size(); ++i) {
    const RescoreResult &r = result.selections[i];
    out << result.ids[i] << '\t' << r.selected_index << '\t'
        << SelectionReasonName(r.reason) << '\t';
    for (std::size_t k = 0; k < r.f1.size(); ++k) {
      if (k > 0) out << ',';
      if (r.parsed[k]) {
        out << r.f1[k];
      } else {
        out << "failed";
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string FormatMetrics(const RunConfig &config, const PipelineResult &result) {
  nlohmann::ordered_json report;
  report["entries"] = result.ids.size();
  report["representation"] = RepresentationName(config.representation);
  report["provider"] = ProviderKindName(config.provider);
  report["strategy"] = config.strategy;
  report["seed"] = config.seed;
  report["one_best"] = {{"bleu", result.one_best_metrics.bleu},
                        {"chrf_pp", result.one_best_metrics.chrf}};
  report["final"] = {{"bleu", result.selected_metrics.bleu},
                     {"chrf_pp", result.selected_metrics.chrf}};
  if (config.rescore) {
    report["rescore"] = {
        {"restarts", config.restarts},
        {"changed", result.rescore_summary.changed},
        {"selection_change_rate", result.rescore_summary.selection_change_rate},
        {"mean_selected_f1", result.rescore_summary.mean_selected_f1}};
  }
  return report.dump(2) + "\n";
}

}  // namespace

PreparedRun PrepareRun(const RunConfig &config,
                       std::vector<CorpusEntry> entries) {
  if (entries.empty()) throw Error("corpus", "corpus has no entries");
  PreparedRun run;
  run.entries = std::move(entries);
  std::vector<AmrGraph> graphs;
  for (const CorpusEntry &entry : run.entries) graphs.push_back(entry.graph);
  run.symbols = ExtractArcVocabulary(graphs);

  LinearizeOptions options;
  options.strip_sense = config.strip_sense;
  for (const CorpusEntry &entry : run.entries) {
    try {
      LinearizedAmr amr = Linearize(entry.graph, config.representation, options);
      run.prompts.push_back(AssembleJoint(amr, {}, run.symbols));
    } catch (const Error &e) {
      FailEntry(entry, e);
    }
    run.references.push_back(NormalizeOutput(entry.sentence));
  }
  run.provider = BuildProvider(config, run);
  run.end_token = run.provider->vocabulary().Id(kEndToken);
  return run;
}

std::vector<std::vector<Hypothesis>> DecodeEntries(const PreparedRun &run,
                                                   const RunConfig &config) {
  const std::size_t n = run.entries.size();
  std::vector<std::vector<Hypothesis>> results(n);
  CheckDecodeConfig(MakeDecodeConfig(config, run.end_token, config.seed),
                    run.provider->vocabulary().size());

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = n;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const CorpusEntry &entry = run.entries[i];
        try {
          std::vector<TokenId> context =
              run.provider->vocabulary().Encode(run.prompts[i]);
          results[i] = Decode(*run.provider, context,
                              MakeDecodeConfig(config, run.end_token,
                                               config.seed + i));
        } catch (const Error &e) {
          FailEntry(entry, e);
        }
      } catch (...) {
        // Report the failure of the earliest entry so errors do not depend
        // on scheduling.
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  unsigned threads = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread &thread : pool) thread.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

std::string HypothesisText(const PreparedRun &run, const Hypothesis &hypothesis) {
  std::vector<TokenId> tokens = hypothesis.tokens;
  if (!tokens.empty() && tokens.back() == run.end_token) tokens.pop_back();
  tokens = StripTrailingRepetition(std::move(tokens));
  return JoinTokens(run.provider->vocabulary().Decode(tokens));
}

MetricsPair ScoreLines(const std::vector<std::string> &hypotheses,
                       const std::vector<std::string> &references) {
  if (hypotheses.size() != references.size()) {
    throw Error("metrics", "hypothesis and reference line counts differ");
  }
  std::vector<SentencePair> pairs;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    pairs.push_back({NormalizeOutput(hypotheses[i]), NormalizeOutput(references[i])});
  }
  return {CorpusBleu(pairs).value, ChrfPlusPlus(pairs).value};
}

PipelineResult RunPipeline(const RunConfig &config, ParserBackend *backend) {
  ValidateRunConfig(config);
  CorpusReadResult corpus = ReadCorpus(config.corpus);
  PreparedRun run = PrepareRun(config, std::move(corpus.entries));
  std::vector<std::vector<Hypothesis>> decoded = DecodeEntries(run, config);

  PipelineResult result;
  std::vector<CandidateSet> sets;
  for (std::size_t i = 0; i < run.entries.size(); ++i) {
    const CorpusEntry &entry = run.entries[i];
    result.ids.push_back(entry.id);
    result.references.push_back(JoinTokens(run.references[i]));
    CandidateSet set{entry.id, entry.graph, {}};
    for (const Hypothesis &h : decoded[i]) {
      set.candidates.push_back(
          {HypothesisText(run, h),
           RankScore(h.log_score, h.tokens.size(), config.length_penalty)});
    }
    result.one_best.push_back(set.candidates.front().text);
    result.candidates.push_back(set.candidates);
    sets.push_back(std::move(set));
  }

  result.selected = result.one_best;
  if (config.rescore) {
    std::unique_ptr<ParserBackend> owned;
    if (backend == nullptr) {
      owned = std::make_unique<SubprocessParserBackend>(config.parser_cmd);
      backend = owned.get();
    }
    CorpusRescore rescored =
        RescoreCorpus(sets, *backend, {config.restarts, config.seed},
                      config.batch_size);
    result.rescore_summary = rescored.summary;
    result.selections = std::move(rescored.results);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      result.selected[i] =
          sets[i].candidates[result.selections[i].selected_index].text;
    }
  }
  result.one_best_metrics = ScoreLines(result.one_best, result.references);
  result.selected_metrics = ScoreLines(result.selected, result.references);

  std::vector<BeamRow> rows;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t k = 0; k < sets[i].candidates.size(); ++k) {
      const Candidate &c = sets[i].candidates[k];
      rows.push_back({sets[i].id, static_cast<int>(k), c.model_log_score, c.text});
    }
  }

  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("io", "cannot create '" + dir.string() + "'");
  WriteFile(dir / "hypotheses.txt", JoinLines(result.selected));
  WriteFile(dir / "onebest.txt", JoinLines(result.one_best));
  WriteFile(dir / "references.txt", JoinLines(result.references));
  WriteFile(dir / "beams.tsv", FormatBeamsTsv(rows));
  if (config.rescore) WriteFile(dir / "selections.tsv", FormatSelections(result));
  WriteFile(dir / "metrics.json", FormatMetrics(config, result));
  return result;
}

}  // namespace amrtext
