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

#ifndef LEXIDECODE_WBS_H_
#define LEXIDECODE_WBS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lexidecode/ctc.h"
#include "lexidecode/lexicon.h"

namespace lexidecode {

enum class DecodeMode { kWords };

struct DecodeConfig {
  std::size_t beam_width = 50;
  DecodeMode mode = DecodeMode::kWords;
  // Only accept a final beam whose trailing word is complete, if any is.
  bool require_complete_words = false;
  // Accumulate beam scores as natural logs.
  bool log_space = false;

  void Validate() const;
};

enum class BeamState { kWord, kNonWord };

enum class ScoreSpace { kLinear, kLog };

// A transcription candidate. `blank` and `non_blank` hold the mass of
// alignments ending in a blank or in the last character of `text`, as plain
// probabilities or as logs depending on the owning BeamSet's ScoreSpace.
struct Beam {
  Labeling text;
  double blank = 0.0;
  double non_blank = 0.0;
  // Tree node reached by the trailing word-character run; the root when that
  // run is empty.
  PrefixTree::NodeId node = PrefixTree::kRoot;
  std::size_t prefix_length = 0;

  BeamState state() const {
    return prefix_length == 0 ? BeamState::kNonWord : BeamState::kWord;
  }
  std::u32string_view current_prefix() const {
    return std::u32string_view(text).substr(text.size() - prefix_length);
  }
};

// Beams keyed by text. Adding a text that is already present sums the masses.
class BeamSet {
 public:
  explicit BeamSet(ScoreSpace space = ScoreSpace::kLinear) : space_(space) {}

  ScoreSpace space() const { return space_; }
  std::size_t size() const { return beams_.size(); }
  bool empty() const { return beams_.empty(); }

  void Add(Beam beam);
  double Total(const Beam& beam) const;
  // Total score converted to a probability (exp of the log in log space).
  double Probability(const Beam& beam) const;

  // Best first: descending total score, then ascending text.
  std::vector<const Beam*> Ranked() const;
  // Keeps the `width` best beams, plus the best beam matching `reserve` when
  // none of those match it. Returns true if any beam was dropped.
  bool Prune(std::size_t width,
             const std::function<bool(const Beam&)>& reserve = {});

  // Iteration in text order.
  auto begin() const { return beams_.begin(); }
  auto end() const { return beams_.end(); }

 private:
  ScoreSpace space_;
  std::map<Labeling, Beam> beams_;
};

struct DecodeResult {
  Labeling text;
  double probability = 0.0;
  // True if pruning dropped a beam at any frame.
  bool pruned = false;
};

// Lexicon-constrained CTC beam search in "Words" mode: every dictionary word
// is equally likely and no n-gram model is applied. Holds references only;
// the tree, word characters and alphabet must outlive the searcher.
class WordBeamSearch {
 public:
  WordBeamSearch(const PrefixTree& tree, const WordCharSet& word_chars,
                 const Alphabet& alphabet, DecodeConfig config = {});

  const DecodeConfig& config() const { return config_; }

  // Characters a beam may be extended with at the next frame, sorted by code
  // point. Word state with an incomplete prefix: tree children only. Word
  // state with a complete word: tree children plus non-word characters.
  // Non-word state: first characters of all words plus non-word characters.
  std::u32string AllowedExtensions(const Beam& beam) const;

  // The single empty beam every decode starts from.
  BeamSet Initial() const;

  // Copies and extends every beam of `beams` with one frame of posteriors and
  // merges duplicates. No pruning.
  BeamSet Step(const BeamSet& beams, std::span<const double> frame) const;

  DecodeResult Decode(const ProbMatrix& m) const;

 private:
  const PrefixTree& tree_;
  const WordCharSet& word_chars_;
  const Alphabet& alphabet_;
  DecodeConfig config_;
  std::u32string non_word_chars_;
};

std::u32string allowed_extensions(const Beam& beam, const PrefixTree& tree,
                                  const WordCharSet& word_chars,
                                  const Alphabet& alphabet);

Labeling wbs_decode(const ProbMatrix& m, const PrefixTree& tree,
                    const WordCharSet& word_chars, const Alphabet& alphabet,
                    const DecodeConfig& config = {});

// True if every word-character run of `text` is a corpus word, except the
// trailing run, which only has to start some corpus word (or, with
// `require_complete`, also be a word). Uses a sorted word list, not the trie.
bool IsLexiconLegal(std::u32string_view text,
                    const std::vector<std::u32string>& sorted_words,
                    const WordCharSet& word_chars, bool require_complete);

// Brute-force oracle: scores every lexicon-legal labeling of length <= T with
// labeling_probability and returns the best (ties: smallest text). Throws
// CapExceededError once the summed forward-recursion cost passes `cost_cap`.
ScoredLabeling exhaustive_lexicon_decode(const ProbMatrix& m,
                                         const PrefixTree& tree,
                                         const WordCharSet& word_chars,
                                         const Alphabet& alphabet,
                                         std::uint64_t cost_cap = 10'000'000);

// Number of lexicon-legal labelings of length <= max_length; a beam width at
// least this large never prunes.
std::uint64_t count_legal_labelings(std::size_t max_length,
                                    const PrefixTree& tree,
                                    const WordCharSet& word_chars,
                                    const Alphabet& alphabet,
                                    std::uint64_t cap = 10'000'000);

}  // namespace lexidecode

#endif  // LEXIDECODE_WBS_H_
