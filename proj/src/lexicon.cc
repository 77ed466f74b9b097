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

#include "lexidecode/lexicon.h"

#include <fmt/format.h>
#include <unicode/uchar.h>

#include "lexidecode/error.h"
#include "lexidecode/text.h"

namespace lexidecode {

namespace {

std::string Quote(std::u32string_view s) {
  return "\"" + u32_to_utf8(s) + "\"";
}

}  // namespace

WordCharSet::WordCharSet(std::u32string_view members)
    : members_(members.begin(), members.end()) {
  if (members_.empty()) throw InputError("word character set is empty");
}

WordCharSet WordCharSet::AlphabeticIn(const Alphabet& alphabet) {
  std::u32string letters;
  for (char32_t c : alphabet.chars()) {
    if (u_isUAlphabetic(static_cast<UChar32>(c))) letters.push_back(c);
  }
  if (letters.empty()) {
    throw InputError("alphabet has no alphabetic characters to use as word "
                     "characters");
  }
  return WordCharSet(letters);
}

std::u32string WordCharSet::members() const {
  return std::u32string(members_.begin(), members_.end());
}

void WordCharSet::CheckSubsetOf(const Alphabet& alphabet) const {
  for (char32_t c : members_) {
    if (!alphabet.contains(c)) {
      throw InputError(fmt::format("word character {} is not in the alphabet",
                                   Quote(std::u32string(1, c))));
    }
  }
}

std::u32string WordCharSet::NonWordChars(const Alphabet& alphabet) const {
  std::u32string out;
  for (char32_t c : alphabet.chars()) {
    if (!contains(c)) out.push_back(c);
  }
  return out;
}

std::vector<std::u32string> tokenize(std::u32string_view text,
                                     const WordCharSet& word_chars) {
  std::vector<std::u32string> tokens;
  std::u32string current;
  for (char32_t c : text) {
    if (word_chars.contains(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Corpus Corpus::FromText(std::u32string_view text, const WordCharSet& word_chars,
                        std::string description) {
  Corpus corpus;
  corpus.description = std::move(description);
  for (auto& token : tokenize(text, word_chars)) {
    corpus.words.insert(std::move(token));
  }
  return corpus;
}

void Corpus::Merge(const Corpus& other) {
  words.insert(other.words.begin(), other.words.end());
}

PrefixTree::PrefixTree() : nodes_(1) {}

std::optional<PrefixTree::NodeId> PrefixTree::Child(NodeId node,
                                                    char32_t c) const {
  const auto& children = nodes_[node].children;
  auto it = children.find(c);
  if (it == children.end()) return std::nullopt;
  return it->second;
}

std::optional<PrefixTree::NodeId> PrefixTree::Find(
    std::u32string_view prefix) const {
  NodeId node = kRoot;
  for (char32_t c : prefix) {
    auto child = Child(node, c);
    if (!child) return std::nullopt;
    node = *child;
  }
  return node;
}

std::u32string PrefixTree::ChildChars(NodeId node) const {
  std::u32string out;
  out.reserve(nodes_[node].children.size());
  for (const auto& [c, child] : nodes_[node].children) out.push_back(c);
  return out;
}

std::u32string PrefixTree::next_chars(std::u32string_view prefix) const {
  auto node = Find(prefix);
  if (!node) return {};
  return ChildChars(*node);
}

bool PrefixTree::is_word(std::u32string_view s) const {
  auto node = Find(s);
  return node && nodes_[*node].is_word;
}

std::vector<std::u32string> PrefixTree::Words() const {
  std::vector<std::u32string> out;
  out.reserve(word_count_);
  std::u32string prefix;
  // Depth-first over ordered children yields words in sorted order.
  auto visit = [&](auto&& self, NodeId node) -> void {
    if (nodes_[node].is_word) out.push_back(prefix);
    for (const auto& [c, child] : nodes_[node].children) {
      prefix.push_back(c);
      self(self, child);
      prefix.pop_back();
    }
  };
  visit(visit, kRoot);
  return out;
}

void PrefixTree::Insert(std::u32string_view word) {
  NodeId node = kRoot;
  for (char32_t c : word) {
    auto child = Child(node, c);
    if (!child) {
      const auto id = static_cast<NodeId>(nodes_.size());
      nodes_[node].children.emplace(c, id);
      nodes_.emplace_back();
      child = id;
    }
    node = *child;
  }
  if (!nodes_[node].is_word) {
    nodes_[node].is_word = true;
    ++word_count_;
  }
}

PrefixTree build_tree(const Corpus& corpus, const WordCharSet& word_chars) {
  PrefixTree tree;
  for (const auto& word : corpus.words) {
    if (word.empty()) throw InputError("corpus contains an empty word");
    for (char32_t c : word) {
      if (!word_chars.contains(c)) {
        throw InputError(fmt::format(
            "corpus word {} contains non-word character {}", Quote(word),
            Quote(std::u32string(1, c))));
      }
    }
    tree.Insert(word);
  }
  return tree;
}

}  // namespace lexidecode
