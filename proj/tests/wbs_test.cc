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

#include "lexidecode/wbs.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lexidecode/error.h"
#include "test_util.h"

namespace lexidecode {
namespace {

Corpus Words(std::initializer_list<std::u32string> words) {
  Corpus corpus;
  corpus.words.insert(words.begin(), words.end());
  return corpus;
}

// Beam for `text` with the tree position the decoder would track.
Beam BeamFor(const std::u32string& text, const PrefixTree& tree,
             const WordCharSet& word_chars) {
  Beam beam;
  beam.text = text;
  std::size_t start = text.size();
  while (start > 0 && word_chars.contains(text[start - 1])) --start;
  beam.prefix_length = text.size() - start;
  beam.node = *tree.Find(std::u32string_view(text).substr(start));
  return beam;
}

// Shared instance: alphabet {a,b}, word chars {a,b}, corpus {"ab"}.
struct AbInstance {
  Alphabet alphabet{U"ab"};
  WordCharSet word_chars{U"ab"};
  PrefixTree tree = build_tree(Words({U"ab"}), word_chars);
  ProbMatrix m = ProbMatrix::FromRows({{0.4, 0.5, 0.1}, {0.1, 0.8, 0.1}});
};

TEST(AllowedExtensionsTest, Examples) {
  const Alphabet alphabet(U"ab ");
  const WordCharSet word_chars(U"ab");
  const auto tree = build_tree(Words({U"ab"}), word_chars);
  auto allowed = [&](const std::u32string& text) {
    return allowed_extensions(BeamFor(text, tree, word_chars), tree, word_chars, alphabet);
  };
  EXPECT_EQ(allowed(U""), U" a");
  EXPECT_EQ(allowed(U"a"), U"b");
  EXPECT_EQ(allowed(U"ab"), U" ");
  EXPECT_EQ(allowed(U"ab "), U" a");
}

TEST(AllowedExtensionsTest, CompleteWordWithLongerContinuation) {
  const Alphabet alphabet(U"abc.");
  const WordCharSet word_chars(U"abc");
  const auto tree = build_tree(Words({U"a", U"ab", U"ac", U"b"}), word_chars);
  const WordBeamSearch search(tree, word_chars, alphabet);
  EXPECT_EQ(search.AllowedExtensions(BeamFor(U"a", tree, word_chars)), U".bc");
  EXPECT_EQ(search.AllowedExtensions(BeamFor(U"a.", tree, word_chars)), U".ab");
  EXPECT_EQ(search.AllowedExtensions(BeamFor(U"", tree, word_chars)), U".ab");
}

TEST(WbsDecodeTest, LexiconOverridesGreedy) {
  const AbInstance in;
  DecodeConfig config;
  config.beam_width = 4;
  const auto result = WordBeamSearch(in.tree, in.word_chars, in.alphabet, config).Decode(in.m);
  EXPECT_EQ(result.text, U"ab");
  EXPECT_NEAR(result.probability, 0.32, 1e-15);
  EXPECT_EQ(best_path_decode(in.m, in.alphabet), U"b");
  EXPECT_EQ(wbs_decode(in.m, in.tree, in.word_chars, in.alphabet), U"ab");
}

TEST(WbsDecodeTest, SingleWordCorpus) {
  const Alphabet alphabet(U"ab");
  const WordCharSet word_chars(U"ab");
  const auto tree = build_tree(Words({U"a"}), word_chars);
  const auto m = ProbMatrix::FromRows({{0.6, 0.0, 0.4}, {0.6, 0.0, 0.4}});
  const auto result = WordBeamSearch(tree, word_chars, alphabet).Decode(m);
  EXPECT_EQ(result.text, U"a");
  EXPECT_NEAR(result.probability, 0.84, 1e-15);
  EXPECT_NEAR(result.probability, labeling_probability(m, U"a", alphabet), 1e-15);
}

TEST(WbsDecodeTest, EmptyCorpusWithoutNonWordChars) {
  std::mt19937_64 rng(4);
  const Alphabet alphabet(U"ab");
  const WordCharSet word_chars(U"ab");
  const auto tree = build_tree(Corpus{}, word_chars);
  DecodeConfig config;
  config.beam_width = 1;
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = testing::RandomProbMatrix(1 + trial % 6, 3, rng);
    EXPECT_EQ(wbs_decode(m, tree, word_chars, alphabet, config), U"");
    config.require_complete_words = trial % 2 == 0;
  }
}

TEST(WbsDecodeTest, EmptyCorpusFallsBackToNonWordBestPath) {
  const Alphabet alphabet(U"a.");
  const WordCharSet word_chars(U"a");
  const auto tree = build_tree(Corpus{}, word_chars);
  const auto m = ProbMatrix::FromRows(
      {{0.9, 0.05, 0.05}, {0.1, 0.8, 0.1}, {0.1, 0.1, 0.8}, {0.1, 0.7, 0.2}});
  EXPECT_EQ(wbs_decode(m, tree, word_chars, alphabet), U"..");
}

TEST(WbsDecodeTest, EmptyMatrix) {
  const AbInstance in;
  const auto result = WordBeamSearch(in.tree, in.word_chars, in.alphabet).Decode(ProbMatrix(3, {}));
  EXPECT_EQ(result.text, U"");
  EXPECT_EQ(result.probability, 1.0);
}

TEST(WbsDecodeTest, RepeatedLetterInsideWord) {
  const Alphabet alphabet(U"ab");
  const WordCharSet word_chars(U"ab");
  const auto tree = build_tree(Words({U"aa", U"ab"}), word_chars);
  const auto m = ProbMatrix::FromRows(
      {{0.9, 0.05, 0.05}, {0.6, 0.05, 0.35}, {0.9, 0.05, 0.05}});
  // Path aaa merges to "a", which is only a word prefix here.
  EXPECT_EQ(best_path_decode(m, alphabet), U"a");
  EXPECT_EQ(wbs_decode(m, tree, word_chars, alphabet), U"a");
  // "aa" needs the blank in a-a: 0.9 * 0.35 * 0.9.
  DecodeConfig config;
  config.require_complete_words = true;
  const auto result = WordBeamSearch(tree, word_chars, alphabet, config).Decode(m);
  EXPECT_EQ(result.text, U"aa");
  EXPECT_NEAR(result.probability, 0.9 * 0.35 * 0.9, 1e-15);
}

TEST(WbsDecodeTest, WordRestartsAfterNonWordCharacter) {
  const Alphabet alphabet(U"ab ");
  const WordCharSet word_chars(U"ab");
  const auto tree = build_tree(Words({U"ab"}), word_chars);
  // Greedy reads "ab b"; after the space only a fresh word may start.
  const auto m = ProbMatrix::FromRows({{0.9, 0.0, 0.0, 0.1},
                                       {0.0, 0.9, 0.0, 0.1},
                                       {0.0, 0.0, 0.9, 0.1},
                                       {0.3, 0.6, 0.0, 0.1},
                                       {0.0, 0.9, 0.0, 0.1}});
  EXPECT_EQ(best_path_decode(m, alphabet), U"ab b");
  EXPECT_EQ(wbs_decode(m, tree, word_chars, alphabet), U"ab ab");
}

TEST(WbsDecodeTest, RequireCompleteWords) {
  const Alphabet alphabet(U"ab");
  const WordCharSet word_chars(U"ab");
  const auto tree = build_tree(Words({U"ab"}), word_chars);
  const auto m = ProbMatrix::FromRows({{0.9, 0.0, 0.1}});
  DecodeConfig config;
  EXPECT_EQ(wbs_decode(m, tree, word_chars, alphabet, config), U"a");
  config.require_complete_words = true;
  EXPECT_EQ(wbs_decode(m, tree, word_chars, alphabet, config), U"");
  // Width 1 keeps "a" by score and "" as the best complete beam.
  config.beam_width = 1;
  const auto result = WordBeamSearch(tree, word_chars, alphabet, config).Decode(m);
  EXPECT_EQ(result.text, U"");
  EXPECT_NEAR(result.probability, 0.1, 1e-15);
  EXPECT_FALSE(result.pruned);
}

TEST(WbsDecodeTest, Errors) {
  const AbInstance in;
  DecodeConfig config;
  config.beam_width = 0;
  EXPECT_THROW(wbs_decode(in.m, in.tree, in.word_chars, in.alphabet, config), InputError);
  EXPECT_THROW(wbs_decode(ProbMatrix::FromRows({{0.5, 0.5}}), in.tree, in.word_chars, in.alphabet),
               InputError);
  EXPECT_THROW(WordBeamSearch(in.tree, WordCharSet(U"abz"), in.alphabet), InputError);
}

TEST(BeamSetTest, MergesDuplicatesAndRanks) {
  BeamSet beams;
  beams.Add({U"b", 0.1, 0.2, 0, 0});
  beams.Add({U"a", 0.2, 0.1, 0, 0});
  beams.Add({U"b", 0.05, 0.0, 0, 0});
  ASSERT_EQ(beams.size(), 2u);
  const auto ranked = beams.Ranked();
  EXPECT_EQ(ranked[0]->text, U"b");
  EXPECT_NEAR(beams.Total(*ranked[0]), 0.35, 1e-15);
  EXPECT_TRUE(beams.Prune(1));
  EXPECT_EQ(beams.size(), 1u);
  EXPECT_FALSE(beams.Prune(1));
}

TEST(BeamSetTest, ScoreTiesBreakBySmallerText) {
  BeamSet beams;
  beams.Add({U"ba", 0.25, 0.0, 0, 0});
  beams.Add({U"ab", 0.25, 0.0, 0, 0});
  beams.Add({U"b", 0.25, 0.0, 0, 0});
  beams.Prune(2);
  const auto ranked = beams.Ranked();
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0]->text, U"ab");
  EXPECT_EQ(ranked[1]->text, U"b");
}

TEST(BeamSetTest, PruneKeepsBestReservedBeam) {
  const auto make = [] {
    BeamSet beams;
    beams.Add({U"a", 0.4, 0.0, 0, 0});
    beams.Add({U"b", 0.3, 0.0, 0, 0});
    beams.Add({U"c", 0.2, 0.0, 0, 0});
    beams.Add({U"d", 0.1, 0.0, 0, 0});
    return beams;
  };
  const auto texts = [](const BeamSet& beams) {
    std::u32string out;
    for (const auto& [text, beam] : beams) out += text;
    return out;
  };
  auto cd = make();
  EXPECT_TRUE(cd.Prune(1, [](const Beam& b) { return b.text >= U"c"; }));
  EXPECT_EQ(texts(cd), U"ac");
  auto ab = make();
  EXPECT_TRUE(ab.Prune(2, [](const Beam& b) { return b.text == U"b"; }));
  EXPECT_EQ(texts(ab), U"ab");
  auto none = make();
  EXPECT_TRUE(none.Prune(2, [](const Beam&) { return false; }));
  EXPECT_EQ(texts(none), U"ab");
}

TEST(WbsExhaustiveTest, Examples) {
  const AbInstance in;
  const auto best = exhaustive_lexicon_decode(in.m, in.tree, in.word_chars, in.alphabet);
  EXPECT_EQ(best.text, U"ab");
  EXPECT_NEAR(best.probability, 0.32, 1e-15);
  // Legal labelings are "", "a" and "ab".
  EXPECT_EQ(count_legal_labelings(2, in.tree, in.word_chars, in.alphabet), 3u);

  const auto none = exhaustive_lexicon_decode(in.m, build_tree(Corpus{}, in.word_chars),
                                              in.word_chars, in.alphabet);
  EXPECT_EQ(none.text, U"");
  EXPECT_NEAR(none.probability, 0.01, 1e-15);

  const Alphabet a(U"a");
  const WordCharSet a_chars(U"a");
  const auto single = exhaustive_lexicon_decode(ProbMatrix::FromRows({{0.7, 0.3}}),
                                                build_tree(Words({U"a"}), a_chars), a_chars, a);
  EXPECT_EQ(single.text, U"a");
  EXPECT_NEAR(single.probability, 0.7, 1e-15);
}

TEST(WbsExhaustiveTest, RefusesAboveCap) {
  std::mt19937_64 rng(12);
  const Alphabet alphabet(U"abc ");
  const WordCharSet word_chars(U"abc");
  const auto tree = build_tree(Words({U"abc", U"cab", U"b"}), word_chars);
  const auto m = testing::RandomProbMatrix(30, 5, rng);
  EXPECT_THROW(exhaustive_lexicon_decode(m, tree, word_chars, alphabet, 100'000),
               CapExceededError);
}

TEST(IsLexiconLegalTest, Runs) {
  const WordCharSet word_chars(U"ab");
  const std::vector<std::u32string> words = {U"a", U"ab", U"ba"};
  EXPECT_TRUE(IsLexiconLegal(U"ab a", words, word_chars, false));
  EXPECT_TRUE(IsLexiconLegal(U"ab b", words, word_chars, false));
  EXPECT_FALSE(IsLexiconLegal(U"ab b", words, word_chars, true));
  EXPECT_FALSE(IsLexiconLegal(U"b a", words, word_chars, false));
  EXPECT_FALSE(IsLexiconLegal(U"aa", words, word_chars, false));
  EXPECT_TRUE(IsLexiconLegal(U"  ", words, word_chars, true));
}

struct RandomInstance {
  Alphabet alphabet;
  WordCharSet word_chars;
  std::set<std::u32string> words;
  PrefixTree tree;
  ProbMatrix m;
};

RandomInstance MakeInstance(std::mt19937_64& rng, std::size_t max_frames) {
  std::uniform_int_distribution<std::size_t> size(1, 3);
  const Alphabet alphabet = testing::FirstLetters(size(rng));
  std::u32string members;
  for (char32_t c : alphabet.chars()) {
    if (members.empty() || std::bernoulli_distribution(0.7)(rng)) members.push_back(c);
  }
  const WordCharSet word_chars(members);
  std::set<std::u32string> words;
  const std::size_t count = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  for (std::size_t i = 0; i < count; ++i) words.insert(testing::RandomWord(members, 1, 3, rng));
  Corpus corpus;
  corpus.words = words;
  auto tree = build_tree(corpus, word_chars);
  const std::size_t frames = std::uniform_int_distribution<std::size_t>(1, max_frames)(rng);
  auto m = testing::RandomProbMatrix(frames, alphabet.columns(), rng);
  return {alphabet, word_chars, words, std::move(tree), std::move(m)};
}

TEST(WbsPropertyTest, UnprunedScoreEqualsForwardProbability) {
  std::mt19937_64 rng(31);
  DecodeConfig config;
  config.beam_width = 1'000'000;
  for (int trial = 0; trial < 200; ++trial) {
    const auto in = MakeInstance(rng, 5);
    const auto result =
        WordBeamSearch(in.tree, in.word_chars, in.alphabet, config).Decode(in.m);
    ASSERT_FALSE(result.pruned);
    EXPECT_NEAR(result.probability, labeling_probability(in.m, result.text, in.alphabet), 1e-9);
  }
}

TEST(WbsPropertyTest, AgreesWithExhaustiveOracle) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const auto in = MakeInstance(rng, 4);
    DecodeConfig config;
    config.beam_width = count_legal_labelings(in.m.frames(), in.tree, in.word_chars, in.alphabet);
    const auto oracle = exhaustive_lexicon_decode(in.m, in.tree, in.word_chars, in.alphabet);
    EXPECT_EQ(wbs_decode(in.m, in.tree, in.word_chars, in.alphabet, config), oracle.text);
  }
}

TEST(WbsPropertyTest, OutputIsLexiconSound) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const auto in = MakeInstance(rng, 10);
    DecodeConfig config;
    config.beam_width = 1 + trial % 6;
    config.require_complete_words = trial % 2 == 1;
    const auto text = wbs_decode(in.m, in.tree, in.word_chars, in.alphabet, config);
    EXPECT_TRUE(
        testing::OracleLegal(text, in.words, in.word_chars, config.require_complete_words))
        << "trial " << trial;
  }
}

TEST(WbsPropertyTest, StepIgnoresBeamInsertionOrder) {
  std::mt19937_64 rng(34);
  const Alphabet alphabet(U"abc ");
  const WordCharSet word_chars(U"abc");
  const auto tree = build_tree(Words({U"ab", U"abc", U"ca", U"b", U"cc"}), word_chars);
  const WordBeamSearch search(tree, word_chars, alphabet);
  const auto m = testing::RandomProbMatrix(6, 5, rng);

  // Beam contents after a few unpruned frames.
  BeamSet reference = search.Initial();
  for (std::size_t t = 0; t < 4; ++t) reference = search.Step(reference, m.row(t));
  std::vector<Beam> beams;
  for (const auto& [text, beam] : reference) beams.push_back(beam);

  BeamSet expected = search.Step(reference, m.row(4));
  for (int shuffle = 0; shuffle < 10; ++shuffle) {
    std::shuffle(beams.begin(), beams.end(), rng);
    BeamSet permuted;
    for (const auto& beam : beams) permuted.Add(beam);
    const BeamSet next = search.Step(permuted, m.row(4));
    ASSERT_EQ(next.size(), expected.size());
    auto a = next.begin();
    for (auto b = expected.begin(); b != expected.end(); ++a, ++b) {
      EXPECT_EQ(a->second.text, b->second.text);
      EXPECT_EQ(a->second.blank, b->second.blank);
      EXPECT_EQ(a->second.non_blank, b->second.non_blank);
    }
  }
}

TEST(WbsPropertyTest, DeterministicAndLogSpaceKeepsText) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 300; ++trial) {
    const auto in = MakeInstance(rng, 12);
    DecodeConfig linear;
    linear.beam_width = 1 + trial % 8;
    DecodeConfig log = linear;
    log.log_space = true;
    const auto first = wbs_decode(in.m, in.tree, in.word_chars, in.alphabet, linear);
    EXPECT_EQ(first, wbs_decode(in.m, in.tree, in.word_chars, in.alphabet, linear));
    EXPECT_EQ(first, wbs_decode(in.m, in.tree, in.word_chars, in.alphabet, log));
  }
}

TEST(WbsPropertyTest, LogSpaceSurvivesUnderflow) {
  // 2000 frames of probability 0.5 underflow a linear product (0.5^2000);
  // log space still finds the word.
  const Alphabet alphabet(U"ab");
  const WordCharSet word_chars(U"ab");
  const auto tree = build_tree(Words({U"ab"}), word_chars);
  std::vector<std::vector<double>> rows;
  for (int t = 0; t < 1000; ++t) rows.push_back({0.5, 0.0, 0.5});
  for (int t = 0; t < 1000; ++t) rows.push_back({0.0, 0.5, 0.5});
  DecodeConfig config;
  config.log_space = true;
  const auto result =
      WordBeamSearch(tree, word_chars, alphabet, config).Decode(ProbMatrix::FromRows(rows));
  EXPECT_EQ(result.text, U"ab");
}

}  // namespace
}  // namespace lexidecode
