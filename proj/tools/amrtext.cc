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

// Command-line front end: one subcommand per stage of the AMR-to-text
// pipeline. Failures print `error<TAB>code<TAB>message` on stderr.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "amrtext/config.h"
#include "amrtext/corpus.h"
#include "amrtext/error.h"
#include "amrtext/linearize.h"
#include "amrtext/metrics.h"
#include "amrtext/penman.h"
#include "amrtext/pipeline.h"
#include "amrtext/rescore.h"
#include "amrtext/smatch.h"

namespace {

using namespace amrtext;

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<CorpusEntry> LoadCorpus(const std::string &path) {
  CorpusReadResult corpus = ReadCorpus(path);
  for (const CorpusIssue &issue : corpus.errors) {
    std::cerr << "warning\tpenman\t" << path << ":" << issue.line << ": "
              << issue.message << "\n";
  }
  for (const CorpusIssue &issue : corpus.warnings) {
    std::cerr << "warning\tcorpus\t" << path << ":" << issue.line << ": "
              << issue.message << "\n";
  }
  return std::move(corpus.entries);
}

std::string EntryName(const CorpusEntry &entry, std::size_t index) {
  return entry.id.empty() ? std::to_string(index + 1) : entry.id;
}

int RunParse(const std::string &path, bool indent) {
  std::vector<CorpusEntry> entries = LoadCorpus(path);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    ValidationReport report = Validate(entries[i].graph);
    for (const std::string &finding : report.Findings()) {
      std::cerr << "warning\tinvalid-graph\t" << EntryName(entries[i], i) << ": "
                << finding << "\n";
    }
    std::cout << "# ::id " << EntryName(entries[i], i) << "\n"
              << SerializePenman(entries[i].graph, {.indent = indent}) << "\n\n";
  }
  return 0;
}

int RunLinearize(const std::string &path, const std::string &repr,
                 bool strip_sense) {
  auto representation = RepresentationFromName(repr);
  if (!representation) throw Error("usage", "unknown representation '" + repr + "'");
  LinearizeOptions options;
  options.strip_sense = strip_sense;
  std::vector<CorpusEntry> entries = LoadCorpus(path);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    LinearizedAmr amr = Linearize(entries[i].graph, *representation, options);
    std::cout << EntryName(entries[i], i) << "\t" << JoinTokens(amr.tokens) << "\n";
  }
  return 0;
}

int RunVocab(const std::string &path, const std::string &separator) {
  std::vector<AmrGraph> graphs;
  for (const CorpusEntry &entry : LoadCorpus(path)) graphs.push_back(entry.graph);
  SpecialSymbolMap symbols = ExtractArcVocabulary(graphs, separator);
  std::cout << "separator\t" << symbols.separator() << "\n";
  for (const std::string &form : symbols.forms()) {
    std::cout << form << "\t" << *symbols.Lookup(form) << "\n";
  }
  return 0;
}

int RunSmatch(const std::string &gold_path, const std::string &pred_path,
              int restarts, std::uint64_t seed, bool oracle) {
  std::vector<CorpusEntry> gold = LoadCorpus(gold_path);
  std::vector<CorpusEntry> pred = LoadCorpus(pred_path);
  if (gold.size() != pred.size()) {
    throw Error("smatch", "gold has " + std::to_string(gold.size()) +
                              " graphs, prediction has " +
                              std::to_string(pred.size()));
  }
  long matched = 0, gold_total = 0, pred_total = 0;
  std::cout << std::fixed << std::setprecision(4);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    SmatchScore s = oracle ? SmatchBruteForce(gold[i].graph, pred[i].graph)
                           : SmatchHillClimb(gold[i].graph, pred[i].graph,
                                             restarts, seed);
    matched += s.matched;
    gold_total += s.gold_total;
    pred_total += s.predicted_total;
    std::cout << EntryName(gold[i], i) << "\t" << s.matched << "\t"
              << s.gold_total << "\t" << s.predicted_total << "\t" << s.f1 << "\n";
  }
  SmatchScore total = MakeScore(static_cast<int>(matched), static_cast<int>(gold_total),
                                static_cast<int>(pred_total), {});
  std::cout << "precision\t" << total.precision << "\n"
            << "recall\t" << total.recall << "\n"
            << "f1\t" << total.f1 << "\n";
  return 0;
}

int RunScore(const std::string &metric, const std::string &hyp_path,
             const std::string &ref_path) {
  std::vector<std::string> hyp = ReadLines(hyp_path);
  std::vector<std::string> ref = ReadLines(ref_path);
  MetricsPair scores = ScoreLines(hyp, ref);
  std::cout << std::setprecision(17);
  if (metric == "bleu") {
    std::cout << "bleu\t" << scores.bleu << "\n";
  } else if (metric == "chrfpp") {
    std::cout << "chrf_pp\t" << scores.chrf << "\n";
  } else {
    throw Error("usage", "unknown metric '" + metric + "'");
  }
  return 0;
}

int RunDecode(const std::string &config_path) {
  RunConfig config = ReadRunConfig(config_path);
  PreparedRun run = PrepareRun(config, LoadCorpus(config.corpus));
  std::vector<std::vector<Hypothesis>> decoded = DecodeEntries(run, config);
  std::vector<BeamRow> rows;
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    for (std::size_t k = 0; k < decoded[i].size(); ++k) {
      const Hypothesis &h = decoded[i][k];
      rows.push_back({EntryName(run.entries[i], i), static_cast<int>(k),
                      RankScore(h.log_score, h.tokens.size(), config.length_penalty),
                      HypothesisText(run, h)});
    }
  }
  std::cout << FormatBeamsTsv(rows);
  return 0;
}

int RunRescore(const std::string &gold_path, const std::string &beams_path,
               const std::string &parser_cmd, int restarts, std::uint64_t seed,
               std::size_t batch_size) {
  std::vector<CorpusEntry> gold = LoadCorpus(gold_path);
  std::map<std::string, const CorpusEntry *> by_id;
  for (std::size_t i = 0; i < gold.size(); ++i) by_id[EntryName(gold[i], i)] = &gold[i];

  std::vector<CandidateSet> sets;
  std::map<std::string, std::size_t> set_index;
  for (const BeamRow &row : ReadBeamsTsv(beams_path)) {
    auto it = set_index.find(row.set_id);
    if (it == set_index.end()) {
      auto g = by_id.find(row.set_id);
      if (g == by_id.end()) {
        throw Error("beams", "no gold graph for set '" + row.set_id + "'");
      }
      it = set_index.emplace(row.set_id, sets.size()).first;
      sets.push_back({row.set_id, g->second->graph, {}});
    }
    CandidateSet &set = sets[it->second];
    if (row.rank != static_cast<int>(set.candidates.size())) {
      throw Error("beams", "set '" + row.set_id + "' has out-of-order ranks");
    }
    set.candidates.push_back({row.text, row.model_log_score});
  }

  SubprocessParserBackend backend(parser_cmd);
  CorpusRescore rescored = RescoreCorpus(sets, backend, {restarts, seed}, batch_size);
  std::cout << std::fixed << std::setprecision(6);
  std::cout << "id\tselected\treason\tf1\ttext\n";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const RescoreResult &r = rescored.results[i];
    std::cout << sets[i].id << "\t" << r.selected_index << "\t"
              << SelectionReasonName(r.reason) << "\t" << r.f1[r.selected_index]
              << "\t" << sets[i].candidates[r.selected_index].text << "\n";
  }
  std::cerr << "changed " << rescored.summary.changed << " of "
            << rescored.summary.sets << " selections\n";
  return 0;
}

nlohmann::ordered_json StatsJson(const CorpusStats &stats) {
  nlohmann::ordered_json out;
  out["instances"] = stats.instances;
  out["mean_variables"] = stats.mean_variables;
  out["max_variables"] = stats.max_variables;
  out["relation_labels"] = stats.relation_labels;
  nlohmann::ordered_json variables, tokens;
  for (const auto &[k, v] : stats.variable_histogram) variables[std::to_string(k)] = v;
  for (const auto &[k, v] : stats.token_histogram) tokens[std::to_string(k)] = v;
  out["variable_histogram"] = variables;
  out["token_histogram"] = tokens;
  return out;
}

int RunStats(const std::vector<std::string> &specs) {
  nlohmann::ordered_json out;
  for (const std::string &spec : specs) {
    // `name=path` labels a split; a bare path is labelled by itself.
    std::size_t eq = spec.find('=');
    std::string name = eq == std::string::npos ? spec : spec.substr(0, eq);
    std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    out[name] = StatsJson(ComputeCorpusStats(LoadCorpus(path)));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int RunPipelineCommand(const std::string &config_path) {
  RunConfig config = ReadRunConfig(config_path);
  PipelineResult result = RunPipeline(config);
  std::cout << std::fixed << std::setprecision(2)
            << "entries\t" << result.ids.size() << "\n"
            << "one_best_bleu\t" << result.one_best_metrics.bleu << "\n"
            << "one_best_chrf_pp\t" << result.one_best_metrics.chrf << "\n"
            << "final_bleu\t" << result.selected_metrics.bleu << "\n"
            << "final_chrf_pp\t" << result.selected_metrics.chrf << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"AMR-to-text generation toolkit"};
  app.require_subcommand(1);

  std::string path, gold, pred, hyp, ref, beams, config, repr = "penman",
                                                          metric, parser_cmd,
                                                          separator = kDefaultSeparator;
  bool strip_sense = false, indent = false, oracle = false;
  int restarts = kDefaultRestarts;
  std::uint64_t seed = 0;
  std::size_t batch_size = 0;
  std::vector<std::string> stats_specs;

  auto *parse = app.add_subcommand("parse", "Parse a corpus and print canonical PENMAN");
  parse->add_option("corpus", path)->required();
  parse->add_flag("--indent", indent, "Indent nested nodes");

  auto *linearize = app.add_subcommand("linearize", "Linearize every graph");
  linearize->add_option("corpus", path)->required();
  linearize->add_option("--repr", repr, "nodes, dfs or penman");
  linearize->add_flag("--strip-sense", strip_sense, "Drop sense suffixes");

  auto *vocab = app.add_subcommand("vocab", "List arc labels and reserved tokens");
  vocab->add_option("corpus", path)->required();
  vocab->add_option("--separator", separator);

  auto *smatch = app.add_subcommand("smatch", "Smatch between paired graphs");
  smatch->add_option("gold", gold)->required();
  smatch->add_option("pred", pred)->required();
  smatch->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  smatch->add_option("--seed", seed);
  smatch->add_flag("--oracle", oracle, "Exhaustive search (small graphs only)");

  auto *score = app.add_subcommand("score", "Corpus BLEU or chrF++");
  score->add_option("--metric", metric)->required()->check(
      CLI::IsMember({"bleu", "chrfpp"}));
  score->add_option("hyp", hyp)->required();
  score->add_option("ref", ref)->required();

  auto *decode = app.add_subcommand("decode", "Decode a corpus; prints beams TSV");
  decode->add_option("--config", config)->required();

  auto *rescore = app.add_subcommand("rescore", "Select candidates by Smatch");
  rescore->add_option("--gold", gold)->required();
  rescore->add_option("--beams", beams)->required();
  rescore->add_option("--parser-cmd", parser_cmd)->required();
  rescore->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  rescore->add_option("--seed", seed);
  rescore->add_option("--batch-size", batch_size);

  auto *stats = app.add_subcommand("stats", "Corpus statistics as JSON");
  stats->add_option("corpora", stats_specs, "PATH or NAME=PATH")->required();

  auto *pipeline = app.add_subcommand("pipeline", "Run the full pipeline");
  pipeline->add_option("--config", config)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error\tusage\t" << e.what() << "\n";
    return 2;
  }

  try {
    if (*parse) return RunParse(path, indent);
    if (*linearize) return RunLinearize(path, repr, strip_sense);
    if (*vocab) return RunVocab(path, separator);
    if (*smatch) return RunSmatch(gold, pred, restarts, seed, oracle);
    if (*score) return RunScore(metric, hyp, ref);
    if (*decode) return RunDecode(config);
    if (*rescore) return RunRescore(gold, beams, parser_cmd, restarts, seed, batch_size);
    if (*stats) return RunStats(stats_specs);
    if (*pipeline) return RunPipelineCommand(config);
  } catch (const Error &e) {
    std::cerr << "error\t" << e.code() << "\t" << e.what() << "\n";
    return e.code() == "usage" ? 2 : 1;
  } catch (const std::exception &e) {
    std::cerr << "error\tinternal\t" << e.what() << "\n";
    return 1;
  }
  return 0;
}
