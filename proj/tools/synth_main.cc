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

// Writes a synthetic manifest: noisy one-hot matrices for random lines over a
// fixed vocabulary, with an exact and a distractor-extended corpus.

#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "lexidecode/synthetic.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic decoding dataset"};
  lexidecode::SyntheticConfig config;
  std::string out;
  app.add_option("--out", out, "Output directory")->required();
  app.add_option("--seed", config.seed, "64-bit RNG seed")->required();
  app.add_option("--lines", config.lines, "Number of lines");
  app.add_option("--lines-per-paragraph", config.lines_per_paragraph)
      ->check(CLI::PositiveNumber);
  app.add_option("--min-words", config.min_words_per_line);
  app.add_option("--max-words", config.max_words_per_line);
  app.add_option("--noise", config.noise_mass,
                 "Probability mass moved off the true column per frame")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--distractors", config.distractors,
                 "Extra non-vocabulary words in the extended corpus");
  CLI11_PARSE(app, argc, argv);

  if (config.min_words_per_line < 1 ||
      config.max_words_per_line < config.min_words_per_line) {
    std::cerr << "error: need 1 <= --min-words <= --max-words\n";
    return 2;
  }
  try {
    lexidecode::WriteSyntheticDataset(lexidecode::MakeSyntheticDataset(config),
                                      out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
