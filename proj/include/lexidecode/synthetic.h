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

#ifndef LEXIDECODE_SYNTHETIC_H_
#define LEXIDECODE_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lexidecode/ctc.h"
#include "lexidecode/pipeline.h"

namespace lexidecode {

// Noisy posteriors for known transcripts, for desk-scale experiments where no
// recognizer is available.
struct SyntheticConfig {
  std::uint64_t seed = 0;
  std::size_t lines = 200;
  std::size_t lines_per_paragraph = 4;
  std::size_t min_words_per_line = 3;
  std::size_t max_words_per_line = 6;
  // Probability mass moved off the true column of every frame.
  double noise_mass = 0.2;
  std::size_t distractors = 10'000;
};

struct SyntheticDataset {
  Alphabet alphabet;
  std::u32string word_chars;
  std::vector<std::u32string> vocabulary;
  // Words outside the vocabulary: single-edit neighbours of vocabulary words
  // and random letter strings.
  std::vector<std::u32string> distractors;
  std::vector<ParagraphRecord> paragraphs;
};

// The fixed 50-word vocabulary used for ground-truth lines.
const std::vector<std::u32string>& SyntheticVocabulary();

// One frame of the character followed by one blank frame, per character.
ProbMatrix EncodeOneHot(std::u32string_view text, const Alphabet& alphabet);

// Moves `mass` off each row's largest entry and spreads it over the other
// columns with uniformly random (flat Dirichlet) weights.
ProbMatrix Perturb(const ProbMatrix& m, double mass, std::mt19937_64& rng);

SyntheticDataset MakeSyntheticDataset(const SyntheticConfig& config);

// Writes alphabet.txt, vocabulary.txt, distractors.txt, lines/*.ctcm,
// gt/*.txt and manifest.txt (corpus variants "exact" and "extended").
void WriteSyntheticDataset(const SyntheticDataset& dataset,
                           const std::filesystem::path& dir);

}  // namespace lexidecode

#endif  // LEXIDECODE_SYNTHETIC_H_
