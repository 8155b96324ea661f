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

#ifndef AMRTEXT_METRICS_H_
#define AMRTEXT_METRICS_H_

#include <string>
#include <string_view>
#include <vector>

namespace amrtext {

// Lowercases (ASCII), splits on whitespace and detaches the characters
// . , ! ? ; : " ( ) from the start and end of every word as tokens of
// their own.
std::vector<std::string> NormalizeOutput(std::string_view text);

struct SentencePair {
  std::vector<std::string> hypothesis;
  std::vector<std::string> reference;
};

struct MetricScore {
  // On the 0-100 scale.
  double value = 0.0;
  // BLEU: the (smoothed) n-gram precision used for each order.
  // chrF++: the F-score of each order, character orders first.
  std::vector<double> components;
  // Whether each order took part in the average. An order takes part when
  // it has n-grams (BLEU: in the hypotheses; chrF++: on both sides).
  std::vector<bool> included;
  // Corpus sums per order: hypothesis n-grams, reference n-grams, matches.
  std::vector<long> hypothesis_ngrams;
  std::vector<long> reference_ngrams;
  std::vector<long> matches;
  double brevity_penalty = 1.0;  // BLEU only
  long hypothesis_length = 0;
  long reference_length = 0;
};

enum class BleuSmoothing {
  // An order without matches gets precision 1 / (2^k * n-grams), where k
  // counts the zero-match orders seen so far.
  kExponential,
  // An order without matches makes the score zero.
  kNone,
};

struct BleuOptions {
  int max_order = 4;
  BleuSmoothing smoothing = BleuSmoothing::kExponential;
};

// Corpus BLEU: clipped n-gram matches and counts are summed over the
// corpus, the geometric mean of the precisions is taken over the orders
// that have hypothesis n-grams, and the brevity penalty
// exp(min(0, 1 - r/c)) is applied. Empty input or empty hypotheses score 0.
MetricScore CorpusBleu(const std::vector<SentencePair> &pairs,
                       const BleuOptions &options = {});

struct ChrfOptions {
  int char_order = 6;
  int word_order = 2;
  double beta = 2.0;
};

// chrF++: per-order F-beta from corpus-summed character n-grams (tokens
// joined without whitespace, counted in code points) and word n-grams,
// averaged over the orders that have n-grams on both sides.
MetricScore ChrfPlusPlus(const std::vector<SentencePair> &pairs,
                         const ChrfOptions &options = {});

// Decodes UTF-8 into code points; malformed bytes map to U+FFFD.
std::u32string DecodeUtf8(std::string_view text);

}  // namespace amrtext

#endif  // AMRTEXT_METRICS_H_
