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

#include "lexidecode/metrics.h"

#include <fmt/format.h>

#include <cmath>

#include "lexidecode/error.h"

namespace lexidecode {

double ErrorCounts::percent() const {
  if (total == 0) {
    throw UndefinedMetricError("error rate undefined: ground truth is empty");
  }
  return 100.0 * static_cast<double>(edits) / static_cast<double>(total);
}

ErrorCounts cer(std::span<const EvalPair> pairs) {
  ErrorCounts counts;
  for (const auto& pair : pairs) {
    counts.edits += levenshtein(pair.ground_truth, pair.prediction);
    counts.total += pair.ground_truth.size();
    ++counts.pairs;
  }
  if (counts.total == 0) {
    throw UndefinedMetricError("CER undefined: ground truth has no characters");
  }
  return counts;
}

ErrorCounts wer(std::span<const EvalPair> pairs, const WordCharSet& word_chars) {
  ErrorCounts counts;
  for (const auto& pair : pairs) {
    const auto truth = tokenize(pair.ground_truth, word_chars);
    const auto predicted = tokenize(pair.prediction, word_chars);
    counts.edits += levenshtein(truth, predicted);
    counts.total += truth.size();
    ++counts.pairs;
  }
  if (counts.total == 0) {
    throw UndefinedMetricError("WER undefined: ground truth has no words");
  }
  return counts;
}

MetricReport evaluate_pairs(std::span<const EvalPair> pairs,
                            const WordCharSet& word_chars) {
  return {cer(pairs), wer(pairs, word_chars)};
}

double improvement(double baseline, double improved) {
  if (!(baseline > 0.0) || !std::isfinite(baseline) || !std::isfinite(improved)) {
    throw InputError(fmt::format(
        "improvement needs a finite positive baseline, got {}", baseline));
  }
  return 100.0 * (baseline - improved) / baseline;
}

ImprovementReport ImprovementReport::Between(double baseline, double improved) {
  ImprovementReport report{baseline, improved, std::nullopt};
  if (baseline > 0.0) {
    report.percent = improvement(baseline, improved);
  } else if (baseline == improved) {
    report.percent = 0.0;
  }
  return report;
}

std::string FormatPercent(double value) { return fmt::format("{:.2f}", value); }

std::string FormatPercent(const std::optional<double>& value) {
  return value ? FormatPercent(*value) : "n/a";
}

}  // namespace lexidecode
