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

#ifndef AMRTEXT_CONFIG_H_
#define AMRTEXT_CONFIG_H_

#include <cstdint>
#include <string>

#include "amrtext/decoder.h"
#include "amrtext/linearize.h"
#include "amrtext/smatch.h"

namespace amrtext {

enum class ProviderKind { kMemorize, kUniform, kNgram, kTable };

// Settings for one pipeline run. Read from flat `key = value` text; `#`
// starts a comment line. Unknown keys are rejected.
struct RunConfig {
  std::string corpus;
  std::string output_dir;
  Representation representation = Representation::kPenman;
  bool strip_sense = false;

  ProviderKind provider = ProviderKind::kMemorize;
  std::string provider_file;  // table provider only
  int memorize_rank = 1;      // 2: the reference is the second choice
  double smoothing = 0.01;    // memorizing provider
  int ngram_order = 3;
  double add_k = 0.1;

  std::string strategy = "greedy";  // greedy | beam | nucleus
  int beam_size = 5;
  double nucleus_p = 0.9;
  int max_length = 64;
  double length_penalty = 0.0;
  std::uint64_t seed = 0;  // required; there is no default

  bool rescore = false;
  std::string parser_cmd;
  int restarts = kDefaultRestarts;
  std::size_t batch_size = 0;
  int threads = 0;  // 0: hardware concurrency
};

// Parses and validates. Relative paths are taken relative to `base_dir`.
// Throws Error("config") naming the offending key or line.
RunConfig ParseRunConfig(const std::string &text, const std::string &base_dir = "");
RunConfig ReadRunConfig(const std::string &path);

// Throws Error("config") if a setting is out of range or settings conflict.
void ValidateRunConfig(const RunConfig &config);

// Decoder settings derived from the run configuration.
DecodeConfig MakeDecodeConfig(const RunConfig &config, TokenId end_token,
                              std::uint64_t entry_seed);

std::string ProviderKindName(ProviderKind kind);

}  // namespace amrtext

#endif  // AMRTEXT_CONFIG_H_
