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

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "lexidecode/error.h"

namespace lexidecode {

namespace {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

double LogAdd(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

// Arithmetic of one score space.
struct Scores {
  bool log;

  double zero() const { return log ? kLogZero : 0.0; }
  double one() const { return log ? 0.0 : 1.0; }
  double from_prob(double p) const { return log ? std::log(p) : p; }
  double add(double a, double b) const { return log ? LogAdd(a, b) : a + b; }
  double mul(double a, double b) const { return log ? a + b : a * b; }
};

}  // namespace

void DecodeConfig::Validate() const {
  if (beam_width < 1) throw InputError("beam width must be at least 1");
  if (mode != DecodeMode::kWords) {
    throw InputError("only the Words decoding mode is implemented");
  }
}

void BeamSet::Add(Beam beam) {
  auto [it, inserted] = beams_.try_emplace(beam.text, beam);
  if (inserted) return;
  const Scores s{space_ == ScoreSpace::kLog};
  it->second.blank = s.add(it->second.blank, beam.blank);
  it->second.non_blank = s.add(it->second.non_blank, beam.non_blank);
}

double BeamSet::Total(const Beam& beam) const {
  return Scores{space_ == ScoreSpace::kLog}.add(beam.blank, beam.non_blank);
}

double BeamSet::Probability(const Beam& beam) const {
  const double total = Total(beam);
  return space_ == ScoreSpace::kLog ? std::exp(total) : total;
}

std::vector<const Beam*> BeamSet::Ranked() const {
  std::vector<std::pair<double, const Beam*>> scored;
  scored.reserve(beams_.size());
  for (const auto& [text, beam] : beams_) scored.emplace_back(Total(beam), &beam);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second->text < b.second->text;
  });
  std::vector<const Beam*> out;
  out.reserve(scored.size());
  for (const auto& entry : scored) out.push_back(entry.second);
  return out;
}

bool BeamSet::Prune(std::size_t width,
                    const std::function<bool(const Beam&)>& reserve) {
  if (beams_.size() <= width) return false;
  std::vector<Beam> keep;
  keep.reserve(width + 1);
  bool reserved = !reserve;
  for (const Beam* beam : Ranked()) {
    if (keep.size() < width) {
      keep.push_back(*beam);
      reserved = reserved || reserve(*beam);
    } else if (reserved) {
      break;
    } else if (reserve(*beam)) {
      keep.push_back(*beam);
      break;
    }
  }
  if (keep.size() == beams_.size()) return false;
  beams_.clear();
  for (auto& beam : keep) {
    auto text = beam.text;
    beams_.emplace(std::move(text), std::move(beam));
  }
  return true;
}

WordBeamSearch::WordBeamSearch(const PrefixTree& tree,
                               const WordCharSet& word_chars,
                               const Alphabet& alphabet, DecodeConfig config)
    : tree_(tree),
      word_chars_(word_chars),
      alphabet_(alphabet),
      config_(config),
      non_word_chars_(word_chars.NonWordChars(alphabet)) {
  config_.Validate();
  word_chars_.CheckSubsetOf(alphabet_);
  std::sort(non_word_chars_.begin(), non_word_chars_.end());
}

std::u32string WordBeamSearch::AllowedExtensions(const Beam& beam) const {
  const bool word_state = beam.state() == BeamState::kWord;
  const auto node = word_state ? beam.node : PrefixTree::kRoot;
  std::u32string out = tree_.ChildChars(node);
  // A word in progress may only be left once it is a complete word.
  if (!word_state || tree_.IsWordNode(node)) {
    out += non_word_chars_;
    std::sort(out.begin(), out.end());
  }
  return out;
}

BeamSet WordBeamSearch::Initial() const {
  const Scores s{config_.log_space};
  BeamSet beams(config_.log_space ? ScoreSpace::kLog : ScoreSpace::kLinear);
  Beam empty;
  empty.blank = s.one();
  empty.non_blank = s.zero();
  beams.Add(std::move(empty));
  return beams;
}

BeamSet WordBeamSearch::Step(const BeamSet& beams,
                             std::span<const double> frame) const {
  if (frame.size() != alphabet_.columns()) {
    throw InputError(fmt::format("frame has {} columns, expected {}",
                                 frame.size(), alphabet_.columns()));
  }
  const Scores s{beams.space() == ScoreSpace::kLog};
  const double p_blank = s.from_prob(frame[alphabet_.blank_index()]);
  auto p_char = [&](char32_t c) {
    return s.from_prob(frame[*alphabet_.index_of(c)]);
  };

  BeamSet next(beams.space());
  for (const auto& [text, beam] : beams) {
    const double total = beams.Total(beam);

    Beam copy = beam;
    copy.blank = s.mul(total, p_blank);
    copy.non_blank =
        text.empty() ? s.zero() : s.mul(beam.non_blank, p_char(text.back()));
    next.Add(std::move(copy));

    for (char32_t c : AllowedExtensions(beam)) {
      const double p = p_char(c);
      Beam extended;
      extended.text.reserve(text.size() + 1);
      extended.text = text;
      extended.text.push_back(c);
      extended.blank = s.zero();
      // A repeated character needs a blank in between to count twice.
      extended.non_blank = (!text.empty() && text.back() == c)
                               ? s.mul(beam.blank, p)
                               : s.mul(total, p);
      if (word_chars_.contains(c)) {
        const auto from =
            beam.state() == BeamState::kWord ? beam.node : PrefixTree::kRoot;
        extended.node = *tree_.Child(from, c);
        extended.prefix_length = beam.prefix_length + 1;
      } else {
        extended.node = PrefixTree::kRoot;
        extended.prefix_length = 0;
      }
      next.Add(std::move(extended));
    }
  }
  return next;
}

DecodeResult WordBeamSearch::Decode(const ProbMatrix& m) const {
  m.CheckAlphabet(alphabet_);
  const auto complete = [&](const Beam& b) {
    return b.prefix_length == 0 || tree_.IsWordNode(b.node);
  };
  // With require_complete_words the best complete beam survives pruning, so
  // the final selection always has one to pick.
  std::function<bool(const Beam&)> reserve;
  if (config_.require_complete_words) reserve = complete;

  BeamSet beams = Initial();
  bool pruned = false;
  for (std::size_t t = 0; t < m.frames(); ++t) {
    beams = Step(beams, m.row(t));
    pruned |= beams.Prune(config_.beam_width, reserve);
  }

  const auto ranked = beams.Ranked();
  const Beam* best = ranked.front();
  if (config_.require_complete_words) {
    auto complete_beam = std::find_if(ranked.begin(), ranked.end(),
                                      [&](const Beam* b) { return complete(*b); });
    if (complete_beam != ranked.end()) best = *complete_beam;
  }
  return {best->text, beams.Probability(*best), pruned};
}

std::u32string allowed_extensions(const Beam& beam, const PrefixTree& tree,
                                  const WordCharSet& word_chars,
                                  const Alphabet& alphabet) {
  return WordBeamSearch(tree, word_chars, alphabet).AllowedExtensions(beam);
}

Labeling wbs_decode(const ProbMatrix& m, const PrefixTree& tree,
                    const WordCharSet& word_chars, const Alphabet& alphabet,
                    const DecodeConfig& config) {
  return WordBeamSearch(tree, word_chars, alphabet, config).Decode(m).text;
}

}  // namespace lexidecode
