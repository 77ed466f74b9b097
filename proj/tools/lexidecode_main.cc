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

// Command-line front end: decode, eval, compare and corpus-exp over a
// manifest of per-line CTC matrices.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "lexidecode/error.h"
#include "lexidecode/io.h"
#include "lexidecode/pipeline.h"
#include "lexidecode/text.h"

namespace {

namespace fs = std::filesystem;
using namespace lexidecode;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 1;

struct Options {
  std::string manifest;
  std::string out;
  std::size_t beam_width = 0;  // 0: keep the manifest's value
  bool require_complete_words = false;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  std::string variant;
};

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_st("lexidecode");
  logger->set_pattern("%l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("LEXIDECODE_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

LoadedRun Load(const Options& options, const Manifest& manifest) {
  LoadedRun run = LoadRun(manifest);
  if (options.beam_width > 0) run.config.beam_width = options.beam_width;
  if (options.require_complete_words) run.config.require_complete_words = true;
  run.config.Validate();
  spdlog::info("loaded {} paragraphs, {} corpus variants, beam width {}",
               run.paragraphs.size(), run.corpora.size(), run.config.beam_width);
  return run;
}

const NamedCorpus& SelectCorpus(const LoadedRun& run, const std::string& name) {
  if (name.empty()) return run.corpora.front();
  for (const auto& corpus : run.corpora) {
    if (corpus.name == name) return corpus;
  }
  throw InputError("manifest has no corpus variant named '" + name + "'");
}

LoadedRun Load(const Options& options) {
  return Load(options, ReadManifest(options.manifest));
}

int Decode(const Options& options) {
  const Manifest manifest = ReadManifest(options.manifest);
  if (manifest.lines.empty()) {
    spdlog::warn("manifest lists no lines; nothing to decode");
    return kExitOk;
  }
  const LoadedRun run = Load(options, manifest);
  const auto& corpus = SelectCorpus(run, options.variant);
  const PrefixTree tree = build_tree(corpus.corpus, run.word_chars);
  const auto transcripts = decode_paragraphs(
      run.paragraphs, {run.alphabet, run.word_chars, tree, run.config},
      options.jobs);
  fs::create_directories(options.out);
  int status = kExitOk;
  for (const auto& transcript : transcripts) {
    if (!transcript.text) {
      spdlog::error("paragraph {}: {}", transcript.id, transcript.error);
      status = kExitInput;
      continue;
    }
    WriteFileBytes(fs::path(options.out) / (transcript.id + ".txt"),
                   u32_to_utf8(*transcript.text));
  }
  return status;
}

RunReport Evaluate(const Options& options, const LoadedRun& run) {
  const auto& corpus = SelectCorpus(run, options.variant);
  const PrefixTree tree = build_tree(corpus.corpus, run.word_chars);
  return evaluate_run(run.paragraphs,
                      {run.alphabet, run.word_chars, tree, run.config},
                      corpus.name, options.jobs);
}

int Eval(const Options& options) {
  const LoadedRun run = Load(options);
  const RunReport report = Evaluate(options, run);
  fs::create_directories(options.out);
  WriteFileBytes(fs::path(options.out) / "report.csv", ReportCsv({report}));
  const std::string summary =
      SummaryText(report) + "seed: " + std::to_string(options.seed) + "\n";
  WriteFileBytes(fs::path(options.out) / "summary.txt", summary);
  spdlog::info("\n{}", summary);
  return kExitOk;
}

int Compare(const Options& options) {
  const LoadedRun run = Load(options);
  const RunReport report = Evaluate(options, run);
  fs::create_directories(options.out);
  WriteFileBytes(fs::path(options.out) / "compare.csv", CompareCsv(report));
  return kExitOk;
}

int CorpusExperiment(const Options& options) {
  const LoadedRun run = Load(options);
  const auto reports = corpus_experiment(run.paragraphs, run.corpora,
                                         run.alphabet, run.word_chars,
                                         run.config, options.jobs);
  for (const auto& report : reports) {
    for (const auto& flag : report.flags) {
      spdlog::warn("variant {}: {}", report.variant, flag);
    }
  }
  fs::create_directories(options.out);
  WriteFileBytes(fs::path(options.out) / "corpus_experiment.csv",
                 CorpusTableCsv(reports));
  WriteFileBytes(fs::path(options.out) / "report.csv", ReportCsv(reports));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();

  CLI::App app{"Lexicon-constrained CTC decoding and CER/WER evaluation"};
  app.require_subcommand(1);
  Options options;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", options.manifest, "Run manifest")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", options.out, "Output directory")->required();
    cmd->add_option("--beam-width", options.beam_width,
                    "Beam width (default: manifest value, else 50)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--require-complete-words", options.require_complete_words,
                  "Prefer final beams that end in a complete word");
    cmd->add_option("--jobs", options.jobs, "Decoding threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", options.seed,
                    "Seed echoed into reports (decoding is deterministic)");
  };

  auto* decode = app.add_subcommand("decode", "Write one transcript per paragraph");
  auto* eval = app.add_subcommand("eval", "Greedy vs word beam search CER/WER report");
  auto* compare = app.add_subcommand("compare", "Decoder comparison CSV");
  auto* corpus_exp =
      app.add_subcommand("corpus-exp", "CER/WER per corpus variant");
  for (auto* cmd : {decode, eval, compare}) {
    add_common(cmd);
    cmd->add_option("--variant", options.variant,
                    "Corpus variant (default: first in manifest)");
  }
  add_common(corpus_exp);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*decode) return Decode(options);
    if (*eval) return Eval(options);
    if (*compare) return Compare(options);
    if (*corpus_exp) return CorpusExperiment(options);
  } catch (const InputError& e) {
    spdlog::error("{}", e.what());
    return kExitInput;
  } catch (const CapExceededError& e) {
    spdlog::error("{}", e.what());
    return kExitCap;
  } catch (const std::exception& e) {
    spdlog::critical("{}", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
