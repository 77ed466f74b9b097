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

#ifndef LEXIDECODE_CTC_H_
#define LEXIDECODE_CTC_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lexidecode {

// A decoded transcript: alphabet characters only, never a blank.
using Labeling = std::u32string;

// One column index per frame; index == Alphabet::blank_index() is the blank.
using Path = std::vector<std::size_t>;

// Ordered character set of a dataset. Column j of a matrix is chars()[j]; the
// CTC blank is implicit and occupies the last column (index size()).
class Alphabet {
 public:
  // U+0000 is reserved as the blank sentinel and may not appear.
  static constexpr char32_t kBlankSentinel = U'\0';

  explicit Alphabet(std::u32string chars);

  const std::u32string& chars() const { return chars_; }
  std::size_t size() const { return chars_.size(); }
  std::size_t blank_index() const { return chars_.size(); }
  std::size_t columns() const { return chars_.size() + 1; }

  char32_t at(std::size_t index) const { return chars_.at(index); }
  std::optional<std::size_t> index_of(char32_t c) const;
  bool contains(char32_t c) const { return index_.count(c) != 0; }

 private:
  std::u32string chars_;
  std::unordered_map<char32_t, std::size_t> index_;
};

// Dense row-major frames x columns matrix shared by the two matrix kinds.
class FrameMatrix {
 public:
  std::size_t frames() const { return frames_; }
  std::size_t columns() const { return columns_; }
  double at(std::size_t t, std::size_t c) const {
    return values_[t * columns_ + c];
  }
  std::span<const double> row(std::size_t t) const {
    return {values_.data() + t * columns_, columns_};
  }
  std::span<const double> values() const { return values_; }

  // Throws InputError unless columns() == alphabet.columns().
  void CheckAlphabet(const Alphabet& alphabet) const;

  friend bool operator==(const FrameMatrix&, const FrameMatrix&) = default;

 protected:
  FrameMatrix(std::size_t columns, std::vector<double> values);

 private:
  std::size_t columns_ = 0;
  std::size_t frames_ = 0;
  std::vector<double> values_;
};

// Per-frame posteriors over the characters plus blank. Entries are
// nonnegative and every row sums to one within kRowSumTolerance.
class ProbMatrix : public FrameMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-6;

  ProbMatrix(std::size_t columns, std::vector<double> values);
  static ProbMatrix FromRows(const std::vector<std::vector<double>>& rows);
};

// Unnormalized per-frame scores; finite entries only.
class LogitMatrix : public FrameMatrix {
 public:
  LogitMatrix(std::size_t columns, std::vector<double> values);
  static LogitMatrix FromRows(const std::vector<std::vector<double>>& rows);
};

// Row-wise exp-normalization over all columns, blank included.
ProbMatrix softmax_rows(const LogitMatrix& logits);

// Merges runs of identical indices, drops blanks, maps to characters.
Labeling collapse(const Path& path, const Alphabet& alphabet);

// Per-frame argmax; ties go to the lowest column index.
Path best_path(const ProbMatrix& m);

Labeling best_path_decode(const ProbMatrix& m, const Alphabet& alphabet);

// Total probability of all paths collapsing to `labeling`, by the
// blank-augmented forward recursion. Unrealizable labelings score exactly 0.
double labeling_probability(const ProbMatrix& m, const Labeling& labeling,
                            const Alphabet& alphabet);

struct ScoredLabeling {
  Labeling text;
  double probability = 0.0;
};

// Brute-force oracle: visits all columns^frames paths and sums probability
// per collapsed labeling. Throws CapExceededError above `path_cap` paths.
std::map<Labeling, double> enumerate_labelings(
    const ProbMatrix& m, const Alphabet& alphabet,
    std::uint64_t path_cap = 1'000'000);

// Argmax of enumerate_labelings; ties go to the lexicographically smallest
// labeling.
ScoredLabeling enumerate_decode(const ProbMatrix& m, const Alphabet& alphabet,
                                std::uint64_t path_cap = 1'000'000);

}  // namespace lexidecode

#endif  // LEXIDECODE_CTC_H_
