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

#include <fmt/format.h>

#include <algorithm>
#include <functional>

#include "lexidecode/error.h"
#include "lexidecode/wbs.h"

namespace lexidecode {

namespace {

bool StartsSomeWord(std::u32string_view run,
                    const std::vector<std::u32string>& sorted_words) {
  auto it = std::lower_bound(sorted_words.begin(), sorted_words.end(), run);
  return it != sorted_words.end() &&
         std::u32string_view(*it).substr(0, run.size()) == run;
}

bool IsWord(std::u32string_view run,
            const std::vector<std::u32string>& sorted_words) {
  return std::binary_search(sorted_words.begin(), sorted_words.end(), run);
}

// Depth-first walk over every legal labeling up to `max_length`. Legality is
// prefix-closed, so illegal prefixes are not expanded.
void ForEachLegal(std::size_t max_length,
                  const std::vector<std::u32string>& sorted_words,
                  const WordCharSet& word_chars, const Alphabet& alphabet,
                  const std::function<void(const Labeling&)>& visit) {
  Labeling text;
  auto walk = [&](auto&& self) -> void {
    visit(text);
    if (text.size() == max_length) return;
    for (char32_t c : alphabet.chars()) {
      text.push_back(c);
      if (IsLexiconLegal(text, sorted_words, word_chars, false)) self(self);
      text.pop_back();
    }
  };
  walk(walk);
}

}  // namespace

bool IsLexiconLegal(std::u32string_view text,
                    const std::vector<std::u32string>& sorted_words,
                    const WordCharSet& word_chars, bool require_complete) {
  std::size_t start = 0;
  while (start < text.size()) {
    if (!word_chars.contains(text[start])) {
      ++start;
      continue;
    }
    std::size_t end = start;
    while (end < text.size() && word_chars.contains(text[end])) ++end;
    const auto run = text.substr(start, end - start);
    const bool trailing = end == text.size();
    if (trailing && !require_complete) {
      if (!StartsSomeWord(run, sorted_words)) return false;
    } else if (!IsWord(run, sorted_words)) {
      return false;
    }
    start = end;
  }
  return true;
}

ScoredLabeling exhaustive_lexicon_decode(const ProbMatrix& m,
                                         const PrefixTree& tree,
                                         const WordCharSet& word_chars,
                                         const Alphabet& alphabet,
                                         std::uint64_t cost_cap) {
  m.CheckAlphabet(alphabet);
  word_chars.CheckSubsetOf(alphabet);
  const auto words = tree.Words();
  const std::uint64_t frames = std::max<std::uint64_t>(m.frames(), 1);
  std::uint64_t cost = 0;
  ScoredLabeling best;
  bool first = true;
  ForEachLegal(m.frames(), words, word_chars, alphabet,
               [&](const Labeling& text) {
                 cost += frames * (2 * text.size() + 1);
                 if (cost > cost_cap) {
                   throw CapExceededError(fmt::format(
                       "lexicon enumeration cost exceeds the cap of {}",
                       cost_cap));
                 }
                 const double p = labeling_probability(m, text, alphabet);
                 if (first || p > best.probability ||
                     (p == best.probability && text < best.text)) {
                   best = {text, p};
                   first = false;
                 }
               });
  return best;
}

std::uint64_t count_legal_labelings(std::size_t max_length,
                                    const PrefixTree& tree,
                                    const WordCharSet& word_chars,
                                    const Alphabet& alphabet,
                                    std::uint64_t cap) {
  const auto words = tree.Words();
  std::uint64_t count = 0;
  ForEachLegal(max_length, words, word_chars, alphabet,
               [&](const Labeling&) {
                 if (++count > cap) {
                   throw CapExceededError(fmt::format(
                       "more than {} legal labelings", cap));
                 }
               });
  return count;
}

}  // namespace lexidecode
