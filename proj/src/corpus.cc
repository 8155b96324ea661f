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

#include "amrtext/corpus.h"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "amrtext/error.h"
#include "amrtext/metrics.h"
#include "amrtext/penman.h"

namespace amrtext {
namespace {

bool IsBlank(const std::string &line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

bool IsComment(const std::string &line) {
  std::size_t first = line.find_first_not_of(" \t");
  return first != std::string::npos && line[first] == '#';
}

std::string Trim(const std::string &s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string MetadataField(const std::string &comment_line,
                          const std::string &key) {
  const std::string marker = "::" + key;
  std::size_t pos = 0;
  while ((pos = comment_line.find(marker, pos)) != std::string::npos) {
    std::size_t end = pos + marker.size();
    if (end == comment_line.size() || comment_line[end] == ' ' ||
        comment_line[end] == '\t') {
      // The next field starts at ` ::name`; a bare `::` is sentence text.
      std::size_t next = comment_line.find(" ::", end);
      while (next != std::string::npos &&
             (next + 3 >= comment_line.size() ||
              !std::isalpha(static_cast<unsigned char>(comment_line[next + 3])))) {
        next = comment_line.find(" ::", next + 1);
      }
      return Trim(comment_line.substr(
          end, next == std::string::npos ? std::string::npos : next - end));
    }
    pos = end;
  }
  return "";
}

CorpusEntry MakeEntry(const std::string &id, const std::string &sentence,
                      const AmrGraph &graph) {
  CorpusEntry entry;
  entry.id = id;
  entry.sentence = sentence;
  entry.graph = graph;
  if (!id.empty()) entry.raw_block += "# ::id " + id + "\n";
  entry.raw_block += "# ::snt " + sentence + "\n";
  entry.raw_block += SerializePenman(graph, {.indent = true});
  return entry;
}

CorpusReadResult ParseCorpus(const std::string &text) {
  CorpusReadResult result;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  std::vector<std::string> block;
  int block_start = 0;
  std::size_t block_index = 0;

  auto finish = [&] {
    if (block.empty()) return;
    CorpusEntry entry;
    std::string graph_text;
    bool have_snt = false;
    int graph_line = 0;
    for (std::size_t k = 0; k < block.size(); ++k) {
      const std::string &l = block[k];
      if (!entry.raw_block.empty()) entry.raw_block += '\n';
      entry.raw_block += l;
      if (IsComment(l)) {
        if (l.find("::id") != std::string::npos && entry.id.empty()) {
          entry.id = MetadataField(l, "id");
        }
        if (l.find("::snt") != std::string::npos && !have_snt) {
          entry.sentence = MetadataField(l, "snt");
          have_snt = true;
        }
        // Comment lines inside the graph keep line numbers aligned.
        graph_text += '\n';
      } else {
        if (graph_line == 0) graph_line = block_start + static_cast<int>(k);
        graph_text += l + '\n';
      }
    }
    if (graph_line != 0) {
      try {
        entry.graph = ParsePenman(graph_text);
        if (!have_snt) {
          result.warnings.push_back(
              {block_index, block_start, "block has no ::snt line"});
        }
        result.entries.push_back(std::move(entry));
      } catch (const PenmanError &e) {
        result.errors.push_back(
            {block_index, block_start + e.line() - 1, e.what()});
      }
    }
    ++block_index;
    block.clear();
  };

  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (IsBlank(line)) {
      finish();
      continue;
    }
    if (block.empty()) block_start = line_number;
    block.push_back(line);
  }
  finish();
  if (result.entries.empty()) {
    throw Error("corpus", "no parseable AMR blocks");
  }
  return result;
}

CorpusReadResult ReadCorpus(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseCorpus(buffer.str());
  } catch (const Error &e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string WriteCorpus(const std::vector<CorpusEntry> &entries) {
  std::string out;
  for (const CorpusEntry &entry : entries) {
    out += entry.raw_block;
    out += "\n\n";
  }
  return out;
}

CorpusStats ComputeCorpusStats(const std::vector<CorpusEntry> &entries) {
  CorpusStats stats;
  stats.instances = entries.size();
  std::set<std::string> labels;
  std::size_t total_variables = 0;
  for (const CorpusEntry &entry : entries) {
    std::size_t variables = entry.graph.instances.size();
    total_variables += variables;
    stats.max_variables = std::max(stats.max_variables, variables);
    ++stats.variable_histogram[variables];
    ++stats.token_histogram[NormalizeOutput(entry.sentence).size()];
    for (const Edge &edge : entry.graph.edges) labels.insert(edge.role);
  }
  stats.relation_labels = labels.size();
  if (!entries.empty()) {
    stats.mean_variables =
        static_cast<double>(total_variables) / static_cast<double>(entries.size());
  }
  return stats;
}

}  // namespace amrtext
