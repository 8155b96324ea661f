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

#include "amrtext/provider.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "amrtext/error.h"

namespace amrtext {

Vocabulary::Vocabulary(const std::vector<std::string> &tokens) {
  for (const std::string &token : tokens) Add(token);
}

TokenId Vocabulary::Add(const std::string &token) {
  auto [it, inserted] =
      index_.emplace(token, static_cast<TokenId>(tokens_.size()));
  if (inserted) tokens_.push_back(token);
  return it->second;
}

bool Vocabulary::Contains(const std::string &token) const {
  return index_.count(token) > 0;
}

TokenId Vocabulary::Id(const std::string &token) const {
  auto it = index_.find(token);
  if (it == index_.end()) {
    throw Error("unknown-token", "token '" + token + "' is not in the vocabulary");
  }
  return it->second;
}

std::vector<TokenId> Vocabulary::Encode(
    const std::vector<std::string> &tokens) const {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const std::string &token : tokens) ids.push_back(Id(token));
  return ids;
}

std::vector<std::string> Vocabulary::Decode(std::span<const TokenId> ids) const {
  std::vector<std::string> tokens;
  tokens.reserve(ids.size());
  for (TokenId id : ids) tokens.push_back(Token(id));
  return tokens;
}

void CheckDistribution(const std::vector<double> &probabilities,
                       std::size_t vocabulary_size) {
  if (probabilities.size() != vocabulary_size) {
    throw Error("normalization", "distribution has " +
                                     std::to_string(probabilities.size()) +
                                     " entries for a vocabulary of " +
                                     std::to_string(vocabulary_size));
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw Error("normalization", "negative or NaN probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream message;
    message.precision(17);
    message << "probabilities sum to " << sum;
    throw Error("normalization", message.str());
  }
}

std::vector<double> UniformProvider::NextDistribution(
    std::span<const TokenId>) const {
  return std::vector<double>(vocabulary_.size(),
                             1.0 / static_cast<double>(vocabulary_.size()));
}

std::optional<long double> UniformProvider::ConstantLogProbability() const {
  return -std::log(static_cast<long double>(vocabulary_.size()));
}

// ---------------------------------------------------------------------------
// TableProvider

namespace {

std::vector<std::string> SplitWhitespace(const std::string &line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::unique_ptr<TableProvider> TableProvider::FromText(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  Vocabulary vocabulary;
  bool have_vocab = false;
  std::map<std::vector<TokenId>, std::vector<double>> rows;
  auto fail = [&](const std::string &message) {
    throw Error("table", "line " + std::to_string(line_number) + ": " + message);
  };
  while (std::getline(in, line)) {
    ++line_number;
    std::vector<std::string> words = SplitWhitespace(line);
    if (words.empty() || words[0][0] == '#') continue;
    if (words[0] == "vocab") {
      if (have_vocab) fail("duplicate vocab line");
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (vocabulary.Contains(words[i])) fail("duplicate token " + words[i]);
        vocabulary.Add(words[i]);
      }
      have_vocab = true;
    } else if (words[0] == "ctx") {
      if (!have_vocab) fail("ctx before vocab");
      auto arrow = std::find(words.begin(), words.end(), "=>");
      if (arrow == words.end()) fail("missing '=>'");
      std::vector<TokenId> suffix;
      for (auto it = words.begin() + 1; it != arrow; ++it) {
        if (!vocabulary.Contains(*it)) fail("unknown token " + *it);
        suffix.push_back(vocabulary.Id(*it));
      }
      std::vector<double> probabilities(vocabulary.size(), 0.0);
      for (auto it = arrow + 1; it != words.end(); ++it) {
        std::size_t eq = it->rfind('=');
        if (eq == std::string::npos || eq == 0) fail("expected token=prob");
        std::string token = it->substr(0, eq);
        if (!vocabulary.Contains(token)) fail("unknown token " + token);
        try {
          probabilities[vocabulary.Id(token)] += std::stod(it->substr(eq + 1));
        } catch (const std::logic_error &) {
          fail("bad probability in " + *it);
        }
      }
      try {
        CheckDistribution(probabilities, vocabulary.size());
      } catch (const Error &e) {
        fail(e.what());
      }
      if (!rows.emplace(suffix, probabilities).second) fail("duplicate ctx");
    } else {
      fail("unknown directive " + words[0]);
    }
  }
  if (!have_vocab || vocabulary.size() == 0) {
    throw Error("table", "table has no vocab line");
  }
  return std::make_unique<TableProvider>(std::move(vocabulary), std::move(rows));
}

std::unique_ptr<TableProvider> TableProvider::FromFile(const std::string &path) {
  return FromText(ReadFile(path));
}

TableProvider::TableProvider(
    Vocabulary vocabulary,
    std::map<std::vector<TokenId>, std::vector<double>> rows)
    : vocabulary_(std::move(vocabulary)), rows_(std::move(rows)) {
  for (const auto &[suffix, unused] : rows_) {
    longest_suffix_ = std::max(longest_suffix_, suffix.size());
  }
}

std::vector<double> TableProvider::NextDistribution(
    std::span<const TokenId> context) const {
  std::size_t longest = std::min(longest_suffix_, context.size());
  for (std::size_t n = longest + 1; n-- > 0;) {
    std::vector<TokenId> suffix(context.end() - n, context.end());
    auto it = rows_.find(suffix);
    if (it != rows_.end()) return it->second;
  }
  throw Error("table", "no table row matches the context");
}

// ---------------------------------------------------------------------------
// NgramProvider

std::unique_ptr<NgramProvider> NgramProvider::Train(
    const std::vector<std::vector<std::string>> &sentences, int order,
    double add_k, const std::string &end_token,
    const std::vector<std::string> &extra_tokens) {
  if (order < 1) throw Error("ngram", "order must be at least 1");
  if (!(add_k > 0.0)) throw Error("ngram", "add_k must be positive");
  std::unique_ptr<NgramProvider> model(new NgramProvider());
  model->order_ = order;
  model->add_k_ = add_k;
  for (const auto &sentence : sentences) {
    for (const std::string &token : sentence) model->vocabulary_.Add(token);
  }
  for (const std::string &token : extra_tokens) model->vocabulary_.Add(token);
  TokenId end = model->vocabulary_.Add(end_token);

  const std::size_t history = static_cast<std::size_t>(order - 1);
  for (const auto &sentence : sentences) {
    std::vector<TokenId> ids = model->vocabulary_.Encode(sentence);
    ids.push_back(end);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      std::size_t start = i >= history ? i - history : 0;
      std::vector<TokenId> h(ids.begin() + start, ids.begin() + i);
      model->counts_[h][ids[i]] += 1.0;
      model->totals_[h] += 1.0;
    }
  }
  return model;
}

std::unique_ptr<NgramProvider> NgramProvider::FromFile(
    const std::string &path, int order, double add_k,
    const std::string &end_token, const std::vector<std::string> &extra_tokens) {
  std::istringstream in(ReadFile(path));
  std::vector<std::vector<std::string>> sentences;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> words = SplitWhitespace(line);
    if (!words.empty()) sentences.push_back(std::move(words));
  }
  return Train(sentences, order, add_k, end_token, extra_tokens);
}

std::vector<double> NgramProvider::NextDistribution(
    std::span<const TokenId> context) const {
  const std::size_t history = static_cast<std::size_t>(order_ - 1);
  std::size_t n = std::min(history, context.size());
  std::vector<TokenId> h(context.end() - n, context.end());
  const double v = static_cast<double>(vocabulary_.size());
  double total = 0.0;
  auto total_it = totals_.find(h);
  if (total_it != totals_.end()) total = total_it->second;
  std::vector<double> probabilities(vocabulary_.size(),
                                    add_k_ / (total + add_k_ * v));
  auto counts_it = counts_.find(h);
  if (counts_it != counts_.end()) {
    for (const auto &[token, count] : counts_it->second) {
      probabilities[token] = (count + add_k_) / (total + add_k_ * v);
    }
  }
  return probabilities;
}

// ---------------------------------------------------------------------------
// MemorizingProvider

MemorizingProvider::MemorizingProvider(Vocabulary vocabulary, TokenId separator,
                                       TokenId end_token, double smoothing)
    : vocabulary_(std::move(vocabulary)),
      separator_(separator),
      end_token_(end_token),
      smoothing_(smoothing) {
  if (!(smoothing > 0.0 && smoothing < 1.0)) {
    throw Error("memorizing", "smoothing must lie in (0, 1)");
  }
}

void MemorizingProvider::Memorize(const std::vector<TokenId> &prompt,
                                  const std::vector<TokenId> &continuation,
                                  double weight) {
  if (prompt.empty() || prompt.back() != separator_) {
    throw Error("memorizing", "prompt must end with the separator");
  }
  if (!(weight > 0.0)) throw Error("memorizing", "weight must be positive");
  memory_[prompt].push_back({continuation, weight});
}

std::vector<double> MemorizingProvider::NextDistribution(
    std::span<const TokenId> context) const {
  const double v = static_cast<double>(vocabulary_.size());
  auto sep = std::find(context.rbegin(), context.rend(), separator_);
  if (sep == context.rend()) return std::vector<double>(vocabulary_.size(), 1.0 / v);
  auto prompt_end = sep.base();
  std::vector<TokenId> prompt(context.begin(), prompt_end);
  std::span<const TokenId> prefix(prompt_end, context.end());

  std::vector<double> weights(vocabulary_.size(), 0.0);
  double total = 0.0;
  auto it = memory_.find(prompt);
  if (it != memory_.end()) {
    for (const Continuation &c : it->second) {
      if (prefix.size() > c.tokens.size() ||
          !std::equal(prefix.begin(), prefix.end(), c.tokens.begin())) {
        continue;
      }
      TokenId next = prefix.size() == c.tokens.size() ? end_token_
                                                      : c.tokens[prefix.size()];
      weights[next] += c.weight;
      total += c.weight;
    }
  }
  if (total == 0.0) return std::vector<double>(vocabulary_.size(), 1.0 / v);
  std::vector<double> probabilities(vocabulary_.size());
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    probabilities[i] = smoothing_ / v + (1.0 - smoothing_) * weights[i] / total;
  }
  return probabilities;
}

}  // namespace amrtext
