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

#include "amrtext/rescore.h"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "amrtext/error.h"
#include "amrtext/penman.h"

namespace amrtext {

void CheckCandidateSet(const CandidateSet &set) {
  if (set.candidates.empty()) {
    throw Error("candidate-set", "set '" + set.id + "' has no candidates");
  }
  for (std::size_t i = 1; i < set.candidates.size(); ++i) {
    if (set.candidates[i].model_log_score >
        set.candidates[i - 1].model_log_score) {
      throw Error("candidate-set", "set '" + set.id +
                                       "' is not sorted by model score");
    }
  }
}

std::string SelectionReasonName(SelectionReason reason) {
  switch (reason) {
    case SelectionReason::kSmatchMax:
      return "smatch_max";
    case SelectionReason::kTieBrokenByRank:
      return "tie_broken_by_rank";
    case SelectionReason::kAllParsesFailed:
      return "all_parses_failed_fallback";
  }
  return "smatch_max";
}

std::vector<std::optional<AmrGraph>> ParseBlocks(const std::string &text) {
  std::vector<std::optional<AmrGraph>> result;
  std::istringstream in(text);
  std::string line, graph_text;
  bool in_block = false;
  auto finish = [&] {
    if (!in_block) return;
    std::optional<AmrGraph> graph;
    if (!graph_text.empty()) {
      try {
        graph = ParsePenman(graph_text);
      } catch (const PenmanError &) {
      }
    }
    result.push_back(std::move(graph));
    graph_text.clear();
    in_block = false;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      finish();
      continue;
    }
    in_block = true;
    if (line[first] == '#') continue;
    graph_text += line;
    graph_text += '\n';
  }
  finish();
  return result;
}

namespace {

class TempFile {
 public:
  TempFile() {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "amrtext-XXXXXX").string();
    std::vector<char> buffer(pattern.begin(), pattern.end());
    buffer.push_back('\0');
    int fd = mkstemp(buffer.data());
    if (fd < 0) throw TransportError("cannot create temporary file");
    close(fd);
    path_ = buffer.data();
  }
  ~TempFile() {
    std::error_code ignored;
    std::filesystem::remove(path_, ignored);
  }
  TempFile(const TempFile &) = delete;
  TempFile &operator=(const TempFile &) = delete;

  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

std::string ShellQuote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

void ReplaceAll(std::string &s, const std::string &from, const std::string &to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

void CheckExit(int status, const std::string &command) {
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw TransportError("parser command failed: " + command);
  }
}

}  // namespace

std::vector<std::optional<AmrGraph>> SubprocessParserBackend::ParseBatch(
    const std::vector<std::string> &sentences) {
  std::vector<std::optional<AmrGraph>> results(sentences.size());
  std::vector<std::size_t> sent;
  std::string input;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    std::string line = sentences[i];
    for (char &c : line) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    sent.push_back(i);
    input += line + '\n';
  }
  if (sent.empty()) return results;

  TempFile input_file;
  {
    std::ofstream out(input_file.path(), std::ios::binary);
    out << input;
    if (!out) throw TransportError("cannot write parser input");
  }

  std::string output;
  const bool file_mode = command_.find("{input}") != std::string::npos &&
                         command_.find("{output}") != std::string::npos;
  if (file_mode) {
    TempFile output_file;
    std::string command = command_;
    ReplaceAll(command, "{input}", ShellQuote(input_file.path()));
    ReplaceAll(command, "{output}", ShellQuote(output_file.path()));
    std::fflush(nullptr);
    CheckExit(std::system(command.c_str()), command_);
    std::ifstream in(output_file.path(), std::ios::binary);
    if (!in) throw TransportError("parser wrote no output file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    output = buffer.str();
  } else {
    std::string command =
        "(" + command_ + ") < " + ShellQuote(input_file.path());
    std::fflush(nullptr);
    FILE *pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) throw TransportError("cannot start parser: " + command_);
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
      output.append(buffer.data(), n);
    }
    CheckExit(pclose(pipe), command_);
  }

  std::vector<std::optional<AmrGraph>> blocks = ParseBlocks(output);
  if (blocks.size() != sent.size()) {
    throw TransportError("parser returned " + std::to_string(blocks.size()) +
                         " blocks for " + std::to_string(sent.size()) +
                         " sentences");
  }
  for (std::size_t k = 0; k < sent.size(); ++k) {
    results[sent[k]] = std::move(blocks[k]);
  }
  return results;
}

RescoreResult SelectByCycleConsistency(
    const CandidateSet &set, const std::vector<std::optional<AmrGraph>> &parses,
    const RescoreOptions &options) {
  CheckCandidateSet(set);
  if (parses.size() != set.candidates.size()) {
    throw Error("candidate-set", "parse count does not match candidates");
  }
  RescoreResult result;
  result.f1.assign(parses.size(), 0.0);
  result.parsed.assign(parses.size(), false);
  std::size_t best = 0;
  std::size_t ties = 0;
  bool any = false;
  for (std::size_t i = 0; i < parses.size(); ++i) {
    if (!parses[i]) continue;
    result.parsed[i] = true;
    result.f1[i] =
        SmatchHillClimb(set.gold, *parses[i], options.restarts, options.seed).f1;
    if (!any || result.f1[i] > result.f1[best]) {
      best = i;
      ties = 1;
    } else if (result.f1[i] == result.f1[best]) {
      ++ties;
    }
    any = true;
  }
  if (!any) {
    result.selected_index = 0;
    result.reason = SelectionReason::kAllParsesFailed;
    return result;
  }
  result.selected_index = best;
  result.reason =
      ties > 1 ? SelectionReason::kTieBrokenByRank : SelectionReason::kSmatchMax;
  return result;
}

RescoreResult Rescore(const CandidateSet &set, ParserBackend &backend,
                      const RescoreOptions &options) {
  CheckCandidateSet(set);
  std::vector<std::string> sentences;
  for (const Candidate &c : set.candidates) sentences.push_back(c.text);
  std::vector<std::optional<AmrGraph>> parses = backend.ParseBatch(sentences);
  if (parses.size() != sentences.size()) {
    throw TransportError("backend returned the wrong number of parses");
  }
  return SelectByCycleConsistency(set, parses, options);
}

CorpusRescore RescoreCorpus(const std::vector<CandidateSet> &sets,
                            ParserBackend &backend,
                            const RescoreOptions &options,
                            std::size_t batch_size) {
  if (sets.empty()) throw Error("candidate-set", "no candidate sets");
  std::vector<std::string> sentences;
  for (const CandidateSet &set : sets) {
    CheckCandidateSet(set);
    for (const Candidate &c : set.candidates) sentences.push_back(c.text);
  }
  const std::size_t step = batch_size == 0 ? sentences.size() : batch_size;

  CorpusRescore out;
  std::vector<std::optional<AmrGraph>> parses;
  parses.reserve(sentences.size());
  for (std::size_t start = 0, batch = 0; start < sentences.size();
       start += step, ++batch) {
    std::size_t end = std::min(sentences.size(), start + step);
    std::vector<std::string> chunk(sentences.begin() + start,
                                   sentences.begin() + end);
    std::vector<std::optional<AmrGraph>> parsed;
    try {
      parsed = backend.ParseBatch(chunk);
    } catch (const TransportError &e) {
      throw TransportError(e.what(), static_cast<int>(batch));
    }
    ++out.summary.backend_calls;
    if (parsed.size() != chunk.size()) {
      throw TransportError("backend returned the wrong number of parses",
                           static_cast<int>(batch));
    }
    for (auto &p : parsed) parses.push_back(std::move(p));
  }

  std::size_t offset = 0;
  double f1_sum = 0.0;
  for (const CandidateSet &set : sets) {
    std::vector<std::optional<AmrGraph>> own(
        parses.begin() + offset, parses.begin() + offset + set.candidates.size());
    offset += set.candidates.size();
    RescoreResult result = SelectByCycleConsistency(set, own, options);
    if (result.selected_index != 0) ++out.summary.changed;
    f1_sum += result.f1[result.selected_index];
    out.results.push_back(std::move(result));
  }
  out.summary.sets = sets.size();
  out.summary.selection_change_rate =
      static_cast<double>(out.summary.changed) / static_cast<double>(sets.size());
  out.summary.mean_selected_f1 = f1_sum / static_cast<double>(sets.size());
  return out;
}

std::vector<BeamRow> ReadBeamsTsv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read '" + path + "'");
  std::vector<BeamRow> rows;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        throw Error("beams", path + ":" + std::to_string(line_number) +
                                 ": expected 4 tab-separated fields");
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    fields.push_back(line.substr(start));
    BeamRow row;
    row.set_id = fields[0];
    try {
      row.rank = std::stoi(fields[1]);
      row.model_log_score = std::stod(fields[2]);
    } catch (const std::logic_error &) {
      throw Error("beams", path + ":" + std::to_string(line_number) +
                               ": bad rank or score");
    }
    row.text = fields[3];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatBeamsTsv(const std::vector<BeamRow> &rows) {
  std::ostringstream out;
  out.precision(17);
  for (const BeamRow &row : rows) {
    out << row.set_id << '\t' << row.rank << '\t' << row.model_log_score << '\t'
        << row.text << '\n';
  }
  return out.str();
}

}  // namespace amrtext
