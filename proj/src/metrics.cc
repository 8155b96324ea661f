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

#include "amrtext/metrics.h"

#include <cctype>
#include <cmath>
#include <map>

namespace amrtext {
namespace {

bool IsDetachable(char c) {
  switch (c) {
    case '.':
    case ',':
    case '!':
    case '?':
    case ';':
    case ':':
    case '"':
    case '(':
    case ')':
      return true;
    default:
      return false;
  }
}

template <typename Sequence>
std::map<Sequence, long> CountNgrams(const Sequence &items, int n) {
  std::map<Sequence, long> counts;
  if (n <= 0 || items.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= items.size(); ++i) {
    ++counts[Sequence(items.begin() + i, items.begin() + i + n)];
  }
  return counts;
}

// Adds hypothesis, reference and clipped match counts for one order.
template <typename Sequence>
void Accumulate(const Sequence &hypothesis, const Sequence &reference, int n,
                long &hyp_total, long &ref_total, long &matched) {
  auto hyp = CountNgrams(hypothesis, n);
  auto ref = CountNgrams(reference, n);
  for (const auto &[gram, count] : hyp) {
    hyp_total += count;
    auto it = ref.find(gram);
    if (it != ref.end()) matched += std::min(count, it->second);
  }
  for (const auto &[gram, count] : ref) ref_total += count;
}

}  // namespace

std::vector<std::string> NormalizeOutput(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    std::string word(text.substr(start, i - start));
    for (char &c : word) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    std::size_t head = 0, tail = word.size();
    while (head < tail && IsDetachable(word[head])) ++head;
    while (tail > head && IsDetachable(word[tail - 1])) --tail;
    for (std::size_t k = 0; k < head; ++k) tokens.emplace_back(1, word[k]);
    if (tail > head) tokens.push_back(word.substr(head, tail - head));
    for (std::size_t k = tail; k < word.size(); ++k) tokens.emplace_back(1, word[k]);
  }
  return tokens;
}

MetricScore CorpusBleu(const std::vector<SentencePair> &pairs,
                       const BleuOptions &options) {
  const int orders = options.max_order;
  MetricScore score;
  score.components.assign(orders, 0.0);
  score.included.assign(orders, false);
  score.hypothesis_ngrams.assign(orders, 0);
  score.reference_ngrams.assign(orders, 0);
  score.matches.assign(orders, 0);
  for (const SentencePair &pair : pairs) {
    score.hypothesis_length += static_cast<long>(pair.hypothesis.size());
    score.reference_length += static_cast<long>(pair.reference.size());
    for (int n = 1; n <= orders; ++n) {
      Accumulate(pair.hypothesis, pair.reference, n,
                 score.hypothesis_ngrams[n - 1], score.reference_ngrams[n - 1],
                 score.matches[n - 1]);
    }
  }
  if (score.hypothesis_length == 0) {
    score.brevity_penalty = 0.0;
    return score;
  }
  const double c = static_cast<double>(score.hypothesis_length);
  const double r = static_cast<double>(score.reference_length);
  score.brevity_penalty = std::exp(std::min(0.0, 1.0 - r / c));

  double log_sum = 0.0;
  int effective = 0;
  double smoothing_denominator = 1.0;
  for (int n = 0; n < orders; ++n) {
    const long total = score.hypothesis_ngrams[n];
    if (total == 0) continue;
    score.included[n] = true;
    ++effective;
    if (score.matches[n] == 0) {
      if (options.smoothing == BleuSmoothing::kNone) {
        score.components[n] = 0.0;
        log_sum = -INFINITY;
        continue;
      }
      smoothing_denominator *= 2.0;
      score.components[n] = 1.0 / (smoothing_denominator * total);
    } else {
      score.components[n] =
          static_cast<double>(score.matches[n]) / static_cast<double>(total);
    }
    log_sum += std::log(score.components[n]);
  }
  score.value = 100.0 * score.brevity_penalty * std::exp(log_sum / effective);
  return score;
}

MetricScore ChrfPlusPlus(const std::vector<SentencePair> &pairs,
                         const ChrfOptions &options) {
  const int orders = options.char_order + options.word_order;
  MetricScore score;
  score.components.assign(orders, 0.0);
  score.included.assign(orders, false);
  score.hypothesis_ngrams.assign(orders, 0);
  score.reference_ngrams.assign(orders, 0);
  score.matches.assign(orders, 0);
  for (const SentencePair &pair : pairs) {
    std::string hyp_joined, ref_joined;
    for (const std::string &token : pair.hypothesis) hyp_joined += token;
    for (const std::string &token : pair.reference) ref_joined += token;
    const std::u32string hyp_chars = DecodeUtf8(hyp_joined);
    const std::u32string ref_chars = DecodeUtf8(ref_joined);
    score.hypothesis_length += static_cast<long>(hyp_chars.size());
    score.reference_length += static_cast<long>(ref_chars.size());
    for (int n = 1; n <= options.char_order; ++n) {
      Accumulate(hyp_chars, ref_chars, n, score.hypothesis_ngrams[n - 1],
                 score.reference_ngrams[n - 1], score.matches[n - 1]);
    }
    for (int n = 1; n <= options.word_order; ++n) {
      const int k = options.char_order + n - 1;
      Accumulate(pair.hypothesis, pair.reference, n, score.hypothesis_ngrams[k],
                 score.reference_ngrams[k], score.matches[k]);
    }
  }

  const double beta2 = options.beta * options.beta;
  double sum = 0.0;
  int effective = 0;
  for (int k = 0; k < orders; ++k) {
    if (score.hypothesis_ngrams[k] == 0 || score.reference_ngrams[k] == 0) {
      continue;
    }
    score.included[k] = true;
    ++effective;
    const double precision = static_cast<double>(score.matches[k]) /
                             static_cast<double>(score.hypothesis_ngrams[k]);
    const double recall = static_cast<double>(score.matches[k]) /
                          static_cast<double>(score.reference_ngrams[k]);
    const double denominator = beta2 * precision + recall;
    score.components[k] =
        denominator > 0.0 ? (1.0 + beta2) * precision * recall / denominator
                          : 0.0;
    sum += score.components[k];
  }
  score.value = effective > 0 ? 100.0 * sum / effective : 0.0;
  return score;
}

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char lead = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    if (lead >= 0x80) {
      if ((lead >> 5) == 0x6) {
        extra = 1;
      } else if ((lead >> 4) == 0xE) {
        extra = 2;
      } else if ((lead >> 3) == 0x1E) {
        extra = 3;
      } else {
        out.push_back(0xFFFD);
        ++i;
        continue;
      }
    }
    if (i + extra >= text.size() && extra > 0) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    char32_t cp = extra == 0 ? lead : lead & (0x3F >> extra);
    bool valid = true;
    for (std::size_t k = 1; k <= extra; ++k) {
      const unsigned char c = static_cast<unsigned char>(text[i + k]);
      if ((c >> 6) != 0x2) {
        valid = false;
        break;
      }
      cp = (cp << 6) | (c & 0x3F);
    }
    if (!valid) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

}  // namespace amrtext
