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

#ifndef LEXIDECODE_PIPELINE_H_
#define LEXIDECODE_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lexidecode/ctc.h"
#include "lexidecode/lexicon.h"
#include "lexidecode/metrics.h"
#include "lexidecode/wbs.h"

namespace lexidecode {

// A line's network output as stored: posteriors, or logits still needing a
// softmax.
using LineMatrix = std::variant<ProbMatrix, LogitMatrix>;

// Softmax for logits, pass-through for posteriors.
ProbMatrix ToProbabilities(const LineMatrix& matrix);

struct LineRecord {
  std::string id;
  LineMatrix matrix;
  std::optional<std::u32string> ground_truth;
};

struct ParagraphRecord {
  std::string id;
  std::vector<LineRecord> lines;
};

// Separator placed between line transcripts of a paragraph.
inline constexpr char32_t kLineSeparator = U'\n';

// Everything a run decodes against: the alphabet, the word characters, one
// prefix tree and the decoder settings.
struct DecoderSetup {
  const Alphabet& alphabet;
  const WordCharSet& word_chars;
  const PrefixTree& tree;
  DecodeConfig config;
};

// Decodes each line in order with the word beam search and joins the line
// texts with kLineSeparator. Throws InputError for a malformed line.
std::u32string decode_paragraph(const ParagraphRecord& paragraph,
                                const DecoderSetup& setup);

struct ParagraphTranscript {
  std::string id;
  std::optional<std::u32string> text;
  // Set instead of `text` when the paragraph failed.
  std::string error;
};

// Decodes paragraphs on up to `jobs` threads. A failing paragraph yields an
// error entry without affecting the others. Output order follows the input.
std::vector<ParagraphTranscript> decode_paragraphs(
    const std::vector<ParagraphRecord>& paragraphs, const DecoderSetup& setup,
    std::size_t jobs = 1);

struct RunReport {
  std::string variant;
  std::size_t corpus_words = 0;
  DecodeConfig config;
  MetricReport greedy;
  MetricReport wbs;
  ImprovementReport cer_improvement;
  ImprovementReport wer_improvement;
  // Human-readable warnings, e.g. an empty corpus.
  std::vector<std::string> flags;
};

// Decodes every line with best-path and with word beam search and scores
// both against the line ground truths. Greedy is the improvement baseline.
// Throws InputError listing every line without ground truth.
RunReport evaluate_run(const std::vector<ParagraphRecord>& paragraphs,
                       const DecoderSetup& setup, std::string variant = {},
                       std::size_t jobs = 1);

struct NamedCorpus {
  std::string name;
  Corpus corpus;
};

// One evaluate_run per corpus variant. Needs at least two variants.
std::vector<RunReport> corpus_experiment(
    const std::vector<ParagraphRecord>& paragraphs,
    const std::vector<NamedCorpus>& variants, const Alphabet& alphabet,
    const WordCharSet& word_chars, const DecodeConfig& config,
    std::size_t jobs = 1);

inline constexpr const char* kCompareHeader =
    "metric,greedy,wbs,improvement_percent";
inline constexpr const char* kReportHeader =
    "variant,decoder,cer_percent,wer_percent,char_edits,char_total,word_edits,"
    "word_total";
inline constexpr const char* kCorpusTableHeader =
    "variant,corpus_words,cer_percent,wer_percent";

// Rows "CER,<greedy>,<wbs>,<improvement>" and the same for WER.
std::vector<std::string> compare_decoders(const RunReport& report);

// Full CSV documents, header included, newline-terminated rows.
std::string ReportCsv(const std::vector<RunReport>& reports);
std::string CompareCsv(const RunReport& report);
std::string CorpusTableCsv(const std::vector<RunReport>& reports);
std::string SummaryText(const RunReport& report);

}  // namespace lexidecode

#endif  // LEXIDECODE_PIPELINE_H_
