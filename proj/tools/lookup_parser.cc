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

// Stand-in text-to-AMR parser for tests. Reads one sentence per line and
// writes one PENMAN block per sentence. A sentence that matches a corpus
// `::snt` after normalization gets that entry's gold graph; anything else
// gets a flat graph with one node per word. Blank lines yield a block that
// only holds `# ::failed`.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "amrtext/corpus.h"
#include "amrtext/error.h"
#include "amrtext/linearize.h"
#include "amrtext/metrics.h"
#include "amrtext/penman.h"

namespace {

using namespace amrtext;

bool IsConceptWord(const std::string &word) {
  if (word.empty()) return false;
  for (char c : word) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-')) {
      return false;
    }
  }
  return true;
}

std::string WordGraph(const std::vector<std::string> &tokens) {
  AmrGraph graph;
  graph.root = "s";
  graph.instances.push_back({"s", "sentence"});
  int k = 0;
  for (const std::string &token : tokens) {
    if (!IsConceptWord(token)) continue;
    ++k;
    std::string var = "x" + std::to_string(k);
    graph.instances.push_back({var, token});
    graph.edges.push_back({"s", "op" + std::to_string(k), var, false});
  }
  return SerializePenman(graph);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Corpus lookup parser"};
  std::string corpus_path, input_path, output_path;
  bool drop_last = false;
  int exit_code = 0;
  app.add_option("--corpus", corpus_path)->required();
  app.add_option("--input", input_path, "Read sentences from a file");
  app.add_option("--output", output_path, "Write blocks to a file");
  app.add_flag("--drop-last", drop_last, "Omit the last block");
  app.add_option("--exit-code", exit_code, "Exit with this status");
  CLI11_PARSE(app, argc, argv);

  try {
    std::map<std::string, std::string> known;
    for (const CorpusEntry &entry : ReadCorpus(corpus_path).entries) {
      known.emplace(JoinTokens(NormalizeOutput(entry.sentence)),
                    SerializePenman(entry.graph, {.indent = true}));
    }

    std::ifstream file_in;
    if (!input_path.empty()) {
      file_in.open(input_path, std::ios::binary);
      if (!file_in) throw Error("io", "cannot read '" + input_path + "'");
    }
    std::istream &in = input_path.empty() ? std::cin : file_in;

    std::vector<std::string> blocks;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::vector<std::string> tokens = NormalizeOutput(line);
      if (tokens.empty()) {
        blocks.push_back("# ::failed");
        continue;
      }
      std::string key = JoinTokens(tokens);
      auto it = known.find(key);
      std::string block = "# ::snt " + line + "\n";
      block += it != known.end() ? it->second : WordGraph(tokens);
      blocks.push_back(block);
    }
    if (drop_last && !blocks.empty()) blocks.pop_back();

    std::ostringstream out;
    for (const std::string &block : blocks) out << block << "\n\n";
    if (output_path.empty()) {
      std::cout << out.str();
    } else {
      std::ofstream file_out(output_path, std::ios::binary);
      file_out << out.str();
      if (!file_out) throw Error("io", "cannot write '" + output_path + "'");
    }
  } catch (const Error &e) {
    std::cerr << "error\t" << e.code() << "\t" << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
