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

#include "lexidecode/synthetic.h"

#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "lexidecode/error.h"
#include "lexidecode/io.h"
#include "lexidecode/text.h"

namespace lexidecode {

namespace fs = std::filesystem;

namespace {

constexpr char32_t kLetters[] = U"abcdefghijklmnopqrstuvwxyz";
constexpr std::size_t kLetterCount = 26;

template <typename T>
const T& Pick(const std::vector<T>& items, std::mt19937_64& rng) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

char32_t RandomLetter(std::mt19937_64& rng) {
  return kLetters[std::uniform_int_distribution<std::size_t>(0, kLetterCount - 1)(rng)];
}

std::u32string EditNeighbour(std::u32string word, std::mt19937_64& rng) {
  const auto position = std::uniform_int_distribution<std::size_t>(0, word.size() - 1)(rng);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      word[position] = RandomLetter(rng);
      break;
    case 1:
      word.insert(word.begin() + static_cast<std::ptrdiff_t>(position), RandomLetter(rng));
      break;
    default:
      if (word.size() > 1) word.erase(position, 1);
      break;
  }
  return word;
}

}  // namespace

const std::vector<std::u32string>& SyntheticVocabulary() {
  static const std::vector<std::u32string> kVocabulary = {
      U"the",    U"of",     U"and",    U"to",     U"in",     U"that",
      U"was",    U"his",    U"he",     U"it",     U"with",   U"is",
      U"for",    U"as",     U"had",    U"you",    U"not",    U"be",
      U"her",    U"on",     U"at",     U"by",     U"which",  U"have",
      U"or",     U"from",   U"this",   U"him",    U"but",    U"all",
      U"she",    U"they",   U"were",   U"my",     U"are",    U"me",
      U"one",    U"their",  U"so",     U"an",     U"said",   U"them",
      U"we",     U"who",    U"would",  U"been",   U"will",   U"no",
      U"when",   U"there"};
  return kVocabulary;
}

ProbMatrix EncodeOneHot(std::u32string_view text, const Alphabet& alphabet) {
  const std::size_t columns = alphabet.columns();
  std::vector<double> values(2 * text.size() * columns, 0.0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto index = alphabet.index_of(text[i]);
    if (!index) throw InputError("text character is not in the alphabet");
    values[(2 * i) * columns + *index] = 1.0;
    values[(2 * i + 1) * columns + alphabet.blank_index()] = 1.0;
  }
  return ProbMatrix(columns, std::move(values));
}

ProbMatrix Perturb(const ProbMatrix& m, double mass, std::mt19937_64& rng) {
  const std::size_t columns = m.columns();
  std::vector<double> values(m.values().begin(), m.values().end());
  std::exponential_distribution<double> weight(1.0);
  std::vector<double> weights(columns);
  for (std::size_t t = 0; t < m.frames(); ++t) {
    double* row = values.data() + t * columns;
    const auto top = static_cast<std::size_t>(std::max_element(row, row + columns) - row);
    const double moved = std::min(mass, row[top]);
    double sum = 0.0;
    for (std::size_t c = 0; c < columns; ++c) {
      weights[c] = c == top ? 0.0 : weight(rng);
      sum += weights[c];
    }
    if (sum == 0.0) continue;
    row[top] -= moved;
    for (std::size_t c = 0; c < columns; ++c) row[c] += moved * weights[c] / sum;
  }
  return ProbMatrix(columns, std::move(values));
}

SyntheticDataset MakeSyntheticDataset(const SyntheticConfig& config) {
  std::mt19937_64 rng(config.seed);
  const auto& vocabulary = SyntheticVocabulary();
  SyntheticDataset dataset{Alphabet(std::u32string(U" ") + kLetters), kLetters,
                           vocabulary, {}, {}};

  std::set<std::u32string> taken(vocabulary.begin(), vocabulary.end());
  std::set<std::u32string> distractors;
  while (distractors.size() < config.distractors) {
    std::u32string word;
    if (std::bernoulli_distribution(0.5)(rng)) {
      word = EditNeighbour(Pick(vocabulary, rng), rng);
    } else {
      const auto length = std::uniform_int_distribution<std::size_t>(2, 9)(rng);
      for (std::size_t i = 0; i < length; ++i) word.push_back(RandomLetter(rng));
    }
    if (!taken.count(word)) {
      taken.insert(word);
      distractors.insert(word);
    }
  }
  dataset.distractors.assign(distractors.begin(), distractors.end());

  std::uniform_int_distribution<std::size_t> word_count(config.min_words_per_line,
                                                        config.max_words_per_line);
  for (std::size_t i = 0; i < config.lines; ++i) {
    if (i % config.lines_per_paragraph == 0) {
      dataset.paragraphs.push_back(
          {fmt::format("p{:04d}", dataset.paragraphs.size() + 1), {}});
    }
    auto& paragraph = dataset.paragraphs.back();
    std::u32string text;
    const std::size_t words = word_count(rng);
    for (std::size_t w = 0; w < words; ++w) {
      if (w > 0) text.push_back(U' ');
      text += Pick(vocabulary, rng);
    }
    auto matrix = Perturb(EncodeOneHot(text, dataset.alphabet), config.noise_mass, rng);
    paragraph.lines.push_back(
        {fmt::format("{}/{}", paragraph.id, paragraph.lines.size() + 1),
         std::move(matrix), std::move(text)});
  }
  return dataset;
}

void WriteSyntheticDataset(const SyntheticDataset& dataset, const fs::path& dir) {
  fs::create_directories(dir / "lines");
  fs::create_directories(dir / "gt");
  WriteFileBytes(dir / "alphabet.txt", u32_to_utf8(dataset.alphabet.chars()) + "\n");

  auto word_list = [](const std::vector<std::u32string>& words) {
    std::string out;
    for (const auto& word : words) out += u32_to_utf8(word) + "\n";
    return out;
  };
  WriteFileBytes(dir / "vocabulary.txt", word_list(dataset.vocabulary));
  WriteFileBytes(dir / "distractors.txt", word_list(dataset.distractors));

  std::string manifest = fmt::format(
      "# synthetic dataset\nalphabet = alphabet.txt\nword_chars = {}\n"
      "corpus exact = vocabulary.txt\n"
      "corpus extended = vocabulary.txt distractors.txt\n"
      "beam_width = 50\n",
      u32_to_utf8(dataset.word_chars));
  for (const auto& paragraph : dataset.paragraphs) {
    for (std::size_t i = 0; i < paragraph.lines.size(); ++i) {
      const auto& line = paragraph.lines[i];
      const auto stem = fmt::format("{}_{}", paragraph.id, i + 1);
      WriteCtcm(dir / "lines" / (stem + ".ctcm"), line.matrix);
      if (line.ground_truth) {
        WriteFileBytes(dir / "gt" / (stem + ".txt"), u32_to_utf8(*line.ground_truth) + "\n");
        manifest += fmt::format("line {} = lines/{}.ctcm gt/{}.txt\n", paragraph.id, stem, stem);
      } else {
        manifest += fmt::format("line {} = lines/{}.ctcm\n", paragraph.id, stem);
      }
    }
  }
  WriteFileBytes(dir / "manifest.txt", manifest);
}

}  // namespace lexidecode
