/* Copyright 2026 The lexidecode Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef LEXIDECODE_METRICS_H_
#define LEXIDECODE_METRICS_H_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexidecode/lexicon.h"

namespace lexidecode {

// Unit-cost edit distance between two sequences of comparable elements
// (characters of a string, or word tokens).
template <typename Sequence>
std::size_t levenshtein(const Sequence& a, const Sequence& b) {
  const std::size_t n = std::size(a);
  const std::size_t m = std::size(b);
  std::vector<std::size_t> previous(m + 1);
  std::vector<std::size_t> current(m + 1);
  for (std::size_t j = 0; j <= m; ++j) previous[j] = j;
  auto ai = std::begin(a);
  for (std::size_t i = 1; i <= n; ++i, ++ai) {
    current[0] = i;
    auto bj = std::begin(b);
    for (std::size_t j = 1; j <= m; ++j, ++bj) {
      const std::size_t substitution = previous[j - 1] + (*ai == *bj ? 0 : 1);
      current[j] = std::min({previous[j] + 1, current[j - 1] + 1, substitution});
    }
    std::swap(previous, current);
  }
  return previous[m];
}

struct EvalPair {
  std::u32string ground_truth;
  std::u32string prediction;
};

// Summed edits over summed reference length.
struct ErrorCounts {
  std::uint64_t edits = 0;
  std::uint64_t total = 0;
  std::uint64_t pairs = 0;

  // 100 * edits / total. Throws UndefinedMetricError when total is 0.
  double percent() const;
};

// Character error rate as one ratio of sums over all pairs (not a mean of
// per-line rates).
ErrorCounts cer(std::span<const EvalPair> pairs);

// Word error rate: same aggregation over tokens produced by `word_chars`.
ErrorCounts wer(std::span<const EvalPair> pairs, const WordCharSet& word_chars);

struct MetricReport {
  ErrorCounts chars;
  ErrorCounts words;

  double cer_percent() const { return chars.percent(); }
  double wer_percent() const { return words.percent(); }
};

MetricReport evaluate_pairs(std::span<const EvalPair> pairs,
                            const WordCharSet& word_chars);

// 100 * (baseline - improved) / baseline. Throws InputError unless
// baseline > 0.
double improvement(double baseline, double improved);

struct ImprovementReport {
  double baseline = 0.0;
  double improved = 0.0;
  // Empty when the baseline is 0 but the improved error is not.
  std::optional<double> percent;

  // Like improvement(), but a zero baseline yields 0 when both are 0.
  static ImprovementReport Between(double baseline, double improved);
};

// Two-decimal rendering used by every report; "n/a" for an empty value.
std::string FormatPercent(double value);
std::string FormatPercent(const std::optional<double>& value);

}  // namespace lexidecode

#endif  // LEXIDECODE_METRICS_H_
