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

#ifndef LEXIDECODE_LEXICON_H_
#define LEXIDECODE_LEXICON_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexidecode/ctc.h"

namespace lexidecode {

// Characters that may appear inside words. Every other alphabet character is a
// non-word character: it separates words and switches a beam to the non-word
// state.
class WordCharSet {
 public:
  // Throws InputError if `members` is empty.
  explicit WordCharSet(std::u32string_view members);

  // All Unicode alphabetic characters of `alphabet` (accented letters
  // included). Throws InputError if there are none.
  static WordCharSet AlphabeticIn(const Alphabet& alphabet);

  bool contains(char32_t c) const { return members_.count(c) != 0; }
  // Sorted by code point.
  std::u32string members() const;
  // Throws InputError if a member is not an alphabet character.
  void CheckSubsetOf(const Alphabet& alphabet) const;
  // Alphabet characters outside the set, in alphabet order.
  std::u32string NonWordChars(const Alphabet& alphabet) const;

 private:
  std::set<char32_t> members_;
};

// Maximal runs of word characters, in order, case preserved.
std::vector<std::u32string> tokenize(std::u32string_view text,
                                     const WordCharSet& word_chars);

// Distinct corpus words. Only membership matters: no frequencies are kept.
struct Corpus {
  std::set<std::u32string> words;
  std::string description;

  std::size_t word_count() const { return words.size(); }

  static Corpus FromText(std::u32string_view text,
                         const WordCharSet& word_chars,
                         std::string description = {});
  // Plain set union.
  void Merge(const Corpus& other);
};

// Character trie over corpus words. Immutable once built.
class PrefixTree {
 public:
  using NodeId = std::uint32_t;
  static constexpr NodeId kRoot = 0;

  PrefixTree();

  std::optional<NodeId> Find(std::u32string_view prefix) const;
  std::optional<NodeId> Child(NodeId node, char32_t c) const;
  bool IsWordNode(NodeId node) const { return nodes_[node].is_word; }
  // Edge labels below `node`, sorted by code point.
  std::u32string ChildChars(NodeId node) const;

  // Characters c such that prefix + c starts some corpus word. Empty when
  // `prefix` is not in the tree.
  std::u32string next_chars(std::u32string_view prefix) const;
  bool is_word(std::u32string_view s) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t word_count() const { return word_count_; }
  // Every stored word, sorted.
  std::vector<std::u32string> Words() const;

 private:
  friend PrefixTree build_tree(const Corpus&, const WordCharSet&);

  struct Node {
    std::map<char32_t, NodeId> children;
    bool is_word = false;
  };

  void Insert(std::u32string_view word);

  std::vector<Node> nodes_;
  std::size_t word_count_ = 0;
};

// Throws InputError for an empty word or one with a non-word character.
PrefixTree build_tree(const Corpus& corpus, const WordCharSet& word_chars);

}  // namespace lexidecode

#endif  // LEXIDECODE_LEXICON_H_
