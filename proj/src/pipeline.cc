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

#include "lexidecode/pipeline.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>

#include "lexidecode/error.h"
#include "lexidecode/text.h"

namespace lexidecode {

namespace {

// Runs fn(0..count-1) on up to `jobs` threads. Callers write results by
// index, which keeps output independent of scheduling.
void ParallelFor(std::size_t count, std::size_t jobs,
                 const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& worker : workers) worker.join();
}

const char* YesNo(bool value) { return value ? "yes" : "no"; }

}  // namespace

ProbMatrix ToProbabilities(const LineMatrix& matrix) {
  if (const auto* logits = std::get_if<LogitMatrix>(&matrix)) {
    return softmax_rows(*logits);
  }
  return std::get<ProbMatrix>(matrix);
}

std::u32string decode_paragraph(const ParagraphRecord& paragraph,
                                const DecoderSetup& setup) {
  const WordBeamSearch search(setup.tree, setup.word_chars, setup.alphabet,
                              setup.config);
  std::u32string out;
  for (std::size_t i = 0; i < paragraph.lines.size(); ++i) {
    const auto& line = paragraph.lines[i];
    try {
      if (i > 0) out.push_back(kLineSeparator);
      out += search.Decode(ToProbabilities(line.matrix)).text;
    } catch (const InputError& e) {
      throw InputError(fmt::format("line {}: {}", line.id, e.what()));
    }
  }
  return out;
}

std::vector<ParagraphTranscript> decode_paragraphs(
    const std::vector<ParagraphRecord>& paragraphs, const DecoderSetup& setup,
    std::size_t jobs) {
  std::vector<ParagraphTranscript> out(paragraphs.size());
  ParallelFor(paragraphs.size(), jobs, [&](std::size_t i) {
    out[i].id = paragraphs[i].id;
    try {
      out[i].text = decode_paragraph(paragraphs[i], setup);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

RunReport evaluate_run(const std::vector<ParagraphRecord>& paragraphs,
                       const DecoderSetup& setup, std::string variant,
                       std::size_t jobs) {
  std::vector<const LineRecord*> lines;
  std::vector<std::string> missing;
  for (const auto& paragraph : paragraphs) {
    for (const auto& line : paragraph.lines) {
      lines.push_back(&line);
      if (!line.ground_truth) missing.push_back(line.id);
    }
  }
  if (!missing.empty()) {
    throw InputError(fmt::format("lines without ground truth: {}",
                                 fmt::join(missing, ", ")));
  }

  const WordBeamSearch search(setup.tree, setup.word_chars, setup.alphabet,
                              setup.config);
  std::vector<EvalPair> greedy(lines.size());
  std::vector<EvalPair> wbs(lines.size());
  std::vector<std::exception_ptr> errors(lines.size());
  ParallelFor(lines.size(), jobs, [&](std::size_t i) {
    try {
      const ProbMatrix probs = ToProbabilities(lines[i]->matrix);
      const auto& truth = *lines[i]->ground_truth;
      greedy[i] = {truth, best_path_decode(probs, setup.alphabet)};
      wbs[i] = {truth, search.Decode(probs).text};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const InputError& e) {
      throw InputError(fmt::format("line {}: {}", lines[i]->id, e.what()));
    }
  }

  RunReport report;
  report.variant = std::move(variant);
  report.corpus_words = setup.tree.word_count();
  report.config = setup.config;
  report.greedy = evaluate_pairs(greedy, setup.word_chars);
  report.wbs = evaluate_pairs(wbs, setup.word_chars);
  report.cer_improvement = ImprovementReport::Between(
      report.greedy.cer_percent(), report.wbs.cer_percent());
  report.wer_improvement = ImprovementReport::Between(
      report.greedy.wer_percent(), report.wbs.wer_percent());
  if (report.corpus_words == 0) report.flags.push_back("empty corpus");
  return report;
}

std::vector<RunReport> corpus_experiment(
    const std::vector<ParagraphRecord>& paragraphs,
    const std::vector<NamedCorpus>& variants, const Alphabet& alphabet,
    const WordCharSet& word_chars, const DecodeConfig& config,
    std::size_t jobs) {
  if (variants.size() < 2) {
    throw InputError(fmt::format(
        "corpus experiment needs at least 2 corpus variants, got {}",
        variants.size()));
  }
  std::vector<RunReport> reports;
  reports.reserve(variants.size());
  for (const auto& variant : variants) {
    const PrefixTree tree = build_tree(variant.corpus, word_chars);
    reports.push_back(evaluate_run(paragraphs,
                                   {alphabet, word_chars, tree, config},
                                   variant.name, jobs));
  }
  return reports;
}

std::vector<std::string> compare_decoders(const RunReport& report) {
  return {
      fmt::format("CER,{},{},{}", FormatPercent(report.greedy.cer_percent()),
                  FormatPercent(report.wbs.cer_percent()),
                  FormatPercent(report.cer_improvement.percent)),
      fmt::format("WER,{},{},{}", FormatPercent(report.greedy.wer_percent()),
                  FormatPercent(report.wbs.wer_percent()),
                  FormatPercent(report.wer_improvement.percent)),
  };
}

std::string ReportCsv(const std::vector<RunReport>& reports) {
  std::string out = std::string(kReportHeader) + "\n";
  for (const auto& report : reports) {
    for (const auto& [decoder, metrics] :
         {std::pair{"greedy", &report.greedy}, std::pair{"wbs", &report.wbs}}) {
      out += fmt::format("{},{},{},{},{},{},{},{}\n", report.variant, decoder,
                         FormatPercent(metrics->cer_percent()),
                         FormatPercent(metrics->wer_percent()),
                         metrics->chars.edits, metrics->chars.total,
                         metrics->words.edits, metrics->words.total);
    }
  }
  return out;
}

std::string CompareCsv(const RunReport& report) {
  std::string out = std::string(kCompareHeader) + "\n";
  for (const auto& row : compare_decoders(report)) out += row + "\n";
  return out;
}

std::string CorpusTableCsv(const std::vector<RunReport>& reports) {
  std::string out = std::string(kCorpusTableHeader) + "\n";
  for (const auto& report : reports) {
    out += fmt::format("{},{},{},{}\n", report.variant, report.corpus_words,
                       FormatPercent(report.wbs.cer_percent()),
                       FormatPercent(report.wbs.wer_percent()));
  }
  return out;
}

std::string SummaryText(const RunReport& report) {
  std::string out;
  out += fmt::format("corpus variant: {}\n", report.variant);
  out += fmt::format("corpus words: {}\n", report.corpus_words);
  out += fmt::format("beam width: {}\n", report.config.beam_width);
  out += fmt::format("require complete words: {}\n",
                     YesNo(report.config.require_complete_words));
  out += fmt::format("log space: {}\n", YesNo(report.config.log_space));
  out += fmt::format("lines: {}\n", report.greedy.chars.pairs);
  out += fmt::format("greedy: CER {}% WER {}%\n",
                     FormatPercent(report.greedy.cer_percent()),
                     FormatPercent(report.greedy.wer_percent()));
  out += fmt::format("wbs:    CER {}% WER {}%\n",
                     FormatPercent(report.wbs.cer_percent()),
                     FormatPercent(report.wbs.wer_percent()));
  out += fmt::format("CER improvement: {}%\n",
                     FormatPercent(report.cer_improvement.percent));
  out += fmt::format("WER improvement: {}%\n",
                     FormatPercent(report.wer_improvement.percent));
  for (const auto& flag : report.flags) out += "warning: " + flag + "\n";
  return out;
}

}  // namespace lexidecode
