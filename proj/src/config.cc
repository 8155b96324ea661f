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

#include "amrtext/config.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "amrtext/error.h"

namespace amrtext {
namespace {

std::string Trim(const std::string &s) {
  std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Fail(const std::string &key, const std::string &message) {
  throw Error("config", key + ": " + message);
}

template <typename T>
T ParseNumber(const std::string &key, const std::string &value) {
  T result{};
  const char *end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, result);
  if (ec != std::errc() || ptr != end) Fail(key, "bad number '" + value + "'");
  return result;
}

double ParseDouble(const std::string &key, const std::string &value) {
  std::size_t used = 0;
  double result = 0.0;
  try {
    result = std::stod(value, &used);
  } catch (const std::logic_error &) {
    Fail(key, "bad number '" + value + "'");
  }
  if (used != value.size()) Fail(key, "bad number '" + value + "'");
  return result;
}

bool ParseBool(const std::string &key, const std::string &value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  Fail(key, "expected true or false, got '" + value + "'");
}

std::string ResolvePath(const std::string &value, const std::string &base_dir) {
  std::filesystem::path path(value);
  if (path.is_absolute() || base_dir.empty()) return value;
  return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

}  // namespace

std::string ProviderKindName(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::kMemorize:
      return "memorize";
    case ProviderKind::kUniform:
      return "uniform";
    case ProviderKind::kNgram:
      return "ngram";
    case ProviderKind::kTable:
      return "table";
  }
  return "memorize";
}

RunConfig ParseRunConfig(const std::string &text, const std::string &base_dir) {
  RunConfig config;
  using Setter = std::function<void(const std::string &)>;
  const std::map<std::string, Setter> setters = {
      {"corpus", [&](const std::string &v) { config.corpus = ResolvePath(v, base_dir); }},
      {"output_dir",
       [&](const std::string &v) { config.output_dir = ResolvePath(v, base_dir); }},
      {"representation",
       [&](const std::string &v) {
         auto r = RepresentationFromName(v);
         if (!r) Fail("representation", "expected nodes, dfs or penman");
         config.representation = *r;
       }},
      {"strip_sense",
       [&](const std::string &v) { config.strip_sense = ParseBool("strip_sense", v); }},
      {"provider",
       [&](const std::string &v) {
         if (v == "memorize") {
           config.provider = ProviderKind::kMemorize;
         } else if (v == "uniform") {
           config.provider = ProviderKind::kUniform;
         } else if (v == "ngram") {
           config.provider = ProviderKind::kNgram;
         } else if (v == "table") {
           config.provider = ProviderKind::kTable;
         } else {
           Fail("provider", "expected memorize, uniform, ngram or table");
         }
       }},
      {"provider_file",
       [&](const std::string &v) { config.provider_file = ResolvePath(v, base_dir); }},
      {"memorize_rank",
       [&](const std::string &v) {
         config.memorize_rank = ParseNumber<int>("memorize_rank", v);
       }},
      {"smoothing",
       [&](const std::string &v) { config.smoothing = ParseDouble("smoothing", v); }},
      {"ngram_order",
       [&](const std::string &v) { config.ngram_order = ParseNumber<int>("ngram_order", v); }},
      {"add_k", [&](const std::string &v) { config.add_k = ParseDouble("add_k", v); }},
      {"strategy", [&](const std::string &v) { config.strategy = v; }},
      {"beam_size",
       [&](const std::string &v) { config.beam_size = ParseNumber<int>("beam_size", v); }},
      {"nucleus_p",
       [&](const std::string &v) { config.nucleus_p = ParseDouble("nucleus_p", v); }},
      {"max_length",
       [&](const std::string &v) { config.max_length = ParseNumber<int>("max_length", v); }},
      {"length_penalty",
       [&](const std::string &v) {
         config.length_penalty = ParseDouble("length_penalty", v);
       }},
      {"seed",
       [&](const std::string &v) { config.seed = ParseNumber<std::uint64_t>("seed", v); }},
      {"rescore", [&](const std::string &v) { config.rescore = ParseBool("rescore", v); }},
      {"parser_cmd", [&](const std::string &v) { config.parser_cmd = v; }},
      {"restarts",
       [&](const std::string &v) { config.restarts = ParseNumber<int>("restarts", v); }},
      {"batch_size",
       [&](const std::string &v) {
         config.batch_size = ParseNumber<std::size_t>("batch_size", v);
       }},
      {"threads",
       [&](const std::string &v) { config.threads = ParseNumber<int>("threads", v); }},
  };

  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw Error("config", "line " + std::to_string(line_number) +
                                ": expected key = value");
    }
    std::string key = Trim(trimmed.substr(0, eq));
    std::string value = Trim(trimmed.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) Fail(key, "unknown key");
    if (!seen.insert(key).second) Fail(key, "given twice");
    it->second(value);
  }

  for (const char *required : {"corpus", "output_dir", "seed"}) {
    if (!seen.count(required)) Fail(required, "required key is missing");
  }
  ValidateRunConfig(config);
  return config;
}

RunConfig ReadRunConfig(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string base = std::filesystem::path(path).parent_path().string();
  return ParseRunConfig(buffer.str(), base);
}

void ValidateRunConfig(const RunConfig &config) {
  if (config.corpus.empty()) Fail("corpus", "must not be empty");
  if (config.output_dir.empty()) Fail("output_dir", "must not be empty");
  if (config.strategy != "greedy" && config.strategy != "beam" &&
      config.strategy != "nucleus") {
    Fail("strategy", "expected greedy, beam or nucleus");
  }
  if (config.beam_size < 1) Fail("beam_size", "must be at least 1");
  if (!(config.nucleus_p > 0.0 && config.nucleus_p <= 1.0)) {
    Fail("nucleus_p", "must be in (0, 1]");
  }
  if (config.max_length < 1) Fail("max_length", "must be at least 1");
  if (config.length_penalty < 0.0) Fail("length_penalty", "must be >= 0");
  if (config.memorize_rank != 1 && config.memorize_rank != 2) {
    Fail("memorize_rank", "must be 1 or 2");
  }
  if (config.memorize_rank == 2 && config.provider != ProviderKind::kMemorize) {
    Fail("memorize_rank", "only applies to provider = memorize");
  }
  if (!(config.smoothing > 0.0 && config.smoothing < 1.0)) {
    Fail("smoothing", "must be in (0, 1)");
  }
  if (config.ngram_order < 1) Fail("ngram_order", "must be at least 1");
  if (!(config.add_k > 0.0)) Fail("add_k", "must be positive");
  if (config.provider == ProviderKind::kTable && config.provider_file.empty()) {
    Fail("provider_file", "required for provider = table");
  }
  if (config.rescore && config.parser_cmd.empty()) {
    Fail("parser_cmd", "required when rescore = true");
  }
  if (config.restarts < 1) Fail("restarts", "must be at least 1");
  if (config.threads < 0) Fail("threads", "must be >= 0");
}

DecodeConfig MakeDecodeConfig(const RunConfig &config, TokenId end_token,
                              std::uint64_t entry_seed) {
  DecodeConfig decode;
  decode.max_length = config.max_length;
  decode.end_token = end_token;
  decode.length_penalty = config.length_penalty;
  if (config.strategy == "beam") {
    decode.strategy = Beam{config.beam_size};
  } else if (config.strategy == "nucleus") {
    decode.strategy = Nucleus{config.nucleus_p, entry_seed};
  } else {
    decode.strategy = Greedy{};
  }
  return decode;
}

}  // namespace amrtext
