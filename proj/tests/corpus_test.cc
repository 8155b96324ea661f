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

#include <gtest/gtest.h>

#include <filesystem>

#include "amrtext/config.h"
#include "amrtext/corpus.h"
#include "amrtext/error.h"
#include "amrtext/penman.h"
#include "amrtext/pipeline.h"
#include "json.hpp"
#include "test_support.h"

namespace amrtext {
namespace {

constexpr char kThreeBlocks[] =
    "# header comment\n"
    "\n"
    "# ::id a.1 ::date 2020\n"
    "# ::snt The boy runs .\n"
    "(r / run-02\n"
    "   :ARG0 (b / boy))\n"
    "\n"
    "\n"
    "# ::id a.2\n"
    "# ::snt Cats sleep .\n"
    "(s / sleep-01 :ARG0 (c / cat))\n"
    "\n"
    "# ::id a.3\n"
    "(t / thing)\n";

TEST(ParseCorpus, ThreeBlocks) {
  CorpusReadResult r = ParseCorpus(kThreeBlocks);
  ASSERT_EQ(r.entries.size(), 3u);
  EXPECT_TRUE(r.errors.empty());
  EXPECT_EQ(r.entries[0].id, "a.1");
  EXPECT_EQ(r.entries[0].sentence, "The boy runs .");
  EXPECT_EQ(r.entries[1].graph.instances.size(), 2u);
  EXPECT_EQ(r.entries[2].sentence, "");
  // The missing sentence is a warning, not an error.
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.warnings[0].block, 3u);
}

TEST(ParseCorpus, BadBlockIsReportedAndSkipped) {
  std::string text = std::string(kThreeBlocks) + "\n# ::id a.4\n# ::snt x\n(u / broken\n";
  CorpusReadResult r = ParseCorpus(text);
  EXPECT_EQ(r.entries.size(), 3u);
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].line, 19);
}

TEST(ParseCorpus, NothingParsesIsAnError) {
  try {
    ParseCorpus("# only a header\n\n");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), "corpus");
  }
  EXPECT_THROW(ParseCorpus("(a / b"), Error);
  EXPECT_THROW(ReadCorpus("/nonexistent/corpus.amr"), Error);
}

TEST(WriteCorpus, RoundTrip) {
  CorpusReadResult r = ParseCorpus(kThreeBlocks);
  CorpusReadResult again = ParseCorpus(WriteCorpus(r.entries));
  EXPECT_EQ(again.entries, r.entries);
  std::vector<CorpusEntry> fixture = ReadCorpus(testing::FixtureCorpus()).entries;
  EXPECT_EQ(ParseCorpus(WriteCorpus(fixture)).entries, fixture);
}

TEST(MakeEntry, ParsesBack) {
  CorpusEntry e = MakeEntry("x.1", "A cat .", ParsePenman("(c / cat)"));
  CorpusReadResult r = ParseCorpus(e.raw_block);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0], e);
}

TEST(MetadataField, Extracts) {
  EXPECT_EQ(MetadataField("# ::id a.1 ::date 2020", "id"), "a.1");
  EXPECT_EQ(MetadataField("# ::id a.1 ::date 2020", "date"), "2020");
  EXPECT_EQ(MetadataField("# ::snt Hello :: there", "snt"), "Hello :: there");
  EXPECT_EQ(MetadataField("# ::id a.1", "snt"), "");
}

TEST(CorpusStats, HandCounts) {
  CorpusStats s = ComputeCorpusStats(ParseCorpus(kThreeBlocks).entries);
  EXPECT_EQ(s.instances, 3u);
  EXPECT_DOUBLE_EQ(s.mean_variables, 5.0 / 3.0);
  EXPECT_EQ(s.max_variables, 2u);
  EXPECT_EQ(s.relation_labels, 1u);
  EXPECT_EQ(s.variable_histogram, (std::map<std::size_t, std::size_t>{{1, 1}, {2, 2}}));
  EXPECT_EQ(s.token_histogram,
            (std::map<std::size_t, std::size_t>{{0, 1}, {3, 1}, {4, 1}}));
}

// ---------------------------------------------------------------------------
// Configuration.

std::string BaseConfig(const std::string &output_dir) {
  return "corpus = " + testing::FixtureCorpus() + "\noutput_dir = " + output_dir +
         "\nseed = 7\n";
}

std::string ConfigErrorFor(const std::string &text) {
  try {
    ParseRunConfig(text);
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), "config");
    return e.what();
  }
  return "";
}

TEST(RunConfig, DefaultsAndOverrides) {
  RunConfig c = ParseRunConfig(BaseConfig("/tmp/out") +
                               "# comment\nstrategy = beam\nbeam_size = 4\n"
                               "representation = dfs\nstrip_sense = true\n");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.strategy, "beam");
  EXPECT_EQ(c.beam_size, 4);
  EXPECT_EQ(c.representation, Representation::kDfsWithEdges);
  EXPECT_TRUE(c.strip_sense);
  EXPECT_EQ(c.provider, ProviderKind::kMemorize);
  EXPECT_EQ(c.restarts, kDefaultRestarts);
}

TEST(RunConfig, RelativePathsUseBaseDir) {
  RunConfig c = ParseRunConfig("corpus = c.amr\noutput_dir = out\nseed = 1\n", "/data/run");
  EXPECT_EQ(c.corpus, "/data/run/c.amr");
  EXPECT_EQ(c.output_dir, "/data/run/out");
}

TEST(RunConfig, Errors) {
  EXPECT_NE(ConfigErrorFor("corpus = a\noutput_dir = b\n").find("seed"), std::string::npos);
  EXPECT_NE(ConfigErrorFor(BaseConfig("o") + "colour = red\n").find("colour"),
            std::string::npos);
  EXPECT_NE(ConfigErrorFor(BaseConfig("o") + "seed = 8\n").find("twice"), std::string::npos);
  EXPECT_NE(ConfigErrorFor(BaseConfig("o") + "beam_size = 0\n").find("beam_size"),
            std::string::npos);
  EXPECT_NE(ConfigErrorFor(BaseConfig("o") + "beam_size = 3x\n").find("beam_size"),
            std::string::npos);
  EXPECT_NE(ConfigErrorFor(BaseConfig("o") + "nucleus_p = 1.5\n").find("nucleus_p"),
            std::string::npos);
  EXPECT_NE(ConfigErrorFor(BaseConfig("o") + "strategy = sample\n").find("strategy"),
            std::string::npos);
  EXPECT_NE(ConfigErrorFor(BaseConfig("o") + "rescore = true\n").find("parser_cmd"),
            std::string::npos);
  EXPECT_NE(ConfigErrorFor(BaseConfig("o") + "provider = table\n").find("provider_file"),
            std::string::npos);
  EXPECT_NE(ConfigErrorFor(BaseConfig("o") + "just words\n").find("line 4"),
            std::string::npos);
  EXPECT_THROW(ReadRunConfig("/nonexistent/run.conf"), Error);
}

TEST(MakeDecodeConfig, Strategies) {
  RunConfig c = ParseRunConfig(BaseConfig("o") + "strategy = nucleus\nnucleus_p = 0.5\n");
  DecodeConfig d = MakeDecodeConfig(c, 3, 99);
  ASSERT_TRUE(std::holds_alternative<Nucleus>(d.strategy));
  EXPECT_EQ(std::get<Nucleus>(d.strategy).mass, 0.5);
  EXPECT_EQ(std::get<Nucleus>(d.strategy).seed, 99u);
  EXPECT_EQ(d.end_token, 3);
}

// ---------------------------------------------------------------------------
// Pipeline.

std::vector<std::string> Lines(const std::string &path) {
  std::vector<std::string> out;
  std::istringstream in(testing::ReadFile(path));
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunConfig PipelineConfig(const std::string &dir, const std::string &extra) {
  return ParseRunConfig(BaseConfig(dir) + extra);
}

std::string LookupCommand() {
  return testing::ToolPath("lookup_parser") + " --corpus " + testing::FixtureCorpus();
}

TEST(Pipeline, GreedyMemorizedCorpusIsPerfect) {
  testing::TempDir dir;
  PipelineResult r = RunPipeline(PipelineConfig(dir.path(), ""));
  EXPECT_EQ(r.ids.size(), 50u);
  EXPECT_DOUBLE_EQ(r.one_best_metrics.bleu, 100.0);
  EXPECT_DOUBLE_EQ(r.selected_metrics.chrf, 100.0);
  EXPECT_EQ(Lines(dir.File("hypotheses.txt")), Lines(dir.File("references.txt")));
  EXPECT_FALSE(std::filesystem::exists(dir.File("selections.tsv")));
  EXPECT_EQ(ReadBeamsTsv(dir.File("beams.tsv")).size(), 50u);
}

TEST(Pipeline, RescoringRecoversSecondChoice) {
  testing::TempDir dir;
  RunConfig c = PipelineConfig(dir.path(),
                               "memorize_rank = 2\nstrategy = beam\nbeam_size = 5\n"
                               "rescore = true\nparser_cmd = " + LookupCommand() + "\n");
  PipelineResult r = RunPipeline(c);
  EXPECT_LT(r.one_best_metrics.bleu, r.selected_metrics.bleu);
  EXPECT_LT(r.one_best_metrics.chrf, r.selected_metrics.chrf);
  EXPECT_GT(r.rescore_summary.changed, 0u);
  EXPECT_EQ(Lines(dir.File("selections.tsv")).size(), 51u);
  EXPECT_EQ(Lines(dir.File("selections.tsv"))[0], "id\tselected\treason\tf1");
  for (std::size_t i = 0; i < r.ids.size(); ++i) {
    EXPECT_EQ(r.selected[i], r.candidates[i][r.selections[i].selected_index].text);
    EXPECT_EQ(r.one_best[i], r.candidates[i][0].text);
  }
  auto metrics = nlohmann::json::parse(testing::ReadFile(dir.File("metrics.json")));
  EXPECT_EQ(metrics["rescore"]["changed"].get<std::size_t>(), r.rescore_summary.changed);
}

TEST(Pipeline, MetricsMatchScoreCommand) {
  testing::TempDir dir;
  RunConfig c = PipelineConfig(dir.path(), "memorize_rank = 2\n");
  PipelineResult r = RunPipeline(c);
  auto metrics = nlohmann::json::parse(testing::ReadFile(dir.File("metrics.json")));
  for (const auto &[metric, key] : {std::pair{"bleu", "bleu"}, {"chrfpp", "chrf_pp"}}) {
    testing::CommandResult cli = testing::RunCommand(
        testing::ToolPath("amrtext") + " score --metric " + metric + " " +
        dir.File("hypotheses.txt") + " " + dir.File("references.txt"));
    ASSERT_EQ(cli.status, 0);
    double value = std::stod(cli.out.substr(cli.out.find('\t') + 1));
    EXPECT_DOUBLE_EQ(value, metrics["final"][key].get<double>()) << metric;
  }
  EXPECT_DOUBLE_EQ(metrics["final"]["bleu"].get<double>(), r.selected_metrics.bleu);
}

TEST(Pipeline, DeterministicAcrossRunsAndThreads) {
  testing::TempDir a, b;
  std::string extra = "provider = ngram\nstrategy = nucleus\nnucleus_p = 0.8\nmax_length = 20\n";
  RunPipeline(PipelineConfig(a.path(), extra + "threads = 1\n"));
  RunPipeline(PipelineConfig(b.path(), extra + "threads = 4\n"));
  for (const char *name : {"hypotheses.txt", "beams.tsv", "metrics.json"}) {
    EXPECT_EQ(testing::ReadFile(a.File(name)), testing::ReadFile(b.File(name))) << name;
  }
}

TEST(Pipeline, FailureWritesNothing) {
  testing::TempDir dir;
  testing::WriteFile(dir.File("empty.amr"), "# nothing here\n");
  RunConfig c = ParseRunConfig("corpus = empty.amr\noutput_dir = out\nseed = 0\n", dir.path());
  EXPECT_THROW(RunPipeline(c), Error);
  EXPECT_FALSE(std::filesystem::exists(dir.File("out/hypotheses.txt")));

  RunConfig broken = PipelineConfig(dir.File("out2"), "strategy = beam\nrescore = true\n"
                                                       "parser_cmd = " + LookupCommand() +
                                                       " --exit-code 2\n");
  EXPECT_THROW(RunPipeline(broken), TransportError);
  EXPECT_FALSE(std::filesystem::exists(dir.File("out2/hypotheses.txt")));
}

TEST(Pipeline, TableProviderMustCoverPrompts) {
  testing::TempDir dir;
  RunConfig c = PipelineConfig(
      dir.path(), "provider = table\nprovider_file = " +
                      testing::SourcePath("data/fixture_table.txt") + "\nmax_length = 4\n");
  // The table's vocabulary does not cover the prompts.
  try {
    RunPipeline(c);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), "unknown-token");
    EXPECT_NE(std::string(e.what()).find("fixture.1"), std::string::npos);
  }
}

}  // namespace
}  // namespace amrtext
