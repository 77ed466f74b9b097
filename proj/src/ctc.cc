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

#include "lexidecode/ctc.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "lexidecode/error.h"
#include "lexidecode/text.h"

namespace lexidecode {

namespace {

std::vector<double> Flatten(const std::vector<std::vector<double>>& rows,
                            std::size_t* columns) {
  if (rows.empty()) {
    throw InputError("matrix needs at least one row to infer its width");
  }
  *columns = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * *columns);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t].size() != *columns) {
      throw InputError(fmt::format("row {} has {} columns, expected {}", t,
                                   rows[t].size(), *columns));
    }
    values.insert(values.end(), rows[t].begin(), rows[t].end());
  }
  return values;
}

}  // namespace

Alphabet::Alphabet(std::u32string chars) : chars_(std::move(chars)) {
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    const char32_t c = chars_[i];
    if (c == kBlankSentinel) {
      throw InputError("alphabet contains the reserved blank sentinel U+0000");
    }
    if (!index_.emplace(c, i).second) {
      throw InputError(fmt::format("alphabet repeats character '{}' (U+{:04X})",
                                   u32_to_utf8(std::u32string(1, c)),
                                   static_cast<std::uint32_t>(c)));
    }
  }
}

std::optional<std::size_t> Alphabet::index_of(char32_t c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FrameMatrix::FrameMatrix(std::size_t columns, std::vector<double> values)
    : columns_(columns), values_(std::move(values)) {
  if (columns_ == 0) throw InputError("matrix must have at least one column");
  if (values_.size() % columns_ != 0) {
    throw InputError(fmt::format("{} values do not fill rows of width {}",
                                 values_.size(), columns_));
  }
  frames_ = values_.size() / columns_;
}

void FrameMatrix::CheckAlphabet(const Alphabet& alphabet) const {
  if (columns_ != alphabet.columns()) {
    throw InputError(fmt::format(
        "matrix has {} columns but the alphabet needs {} ({} characters + "
        "blank)",
        columns_, alphabet.columns(), alphabet.size()));
  }
}

ProbMatrix::ProbMatrix(std::size_t columns, std::vector<double> values)
    : FrameMatrix(columns, std::move(values)) {
  for (std::size_t t = 0; t < frames(); ++t) {
    double sum = 0.0;
    for (std::size_t c = 0; c < columns; ++c) {
      const double p = at(t, c);
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw InputError(fmt::format(
            "probability at frame {} column {} is {}, not a finite value >= 0",
            t, c, p));
      }
      sum += p;
    }
    if (std::fabs(sum - 1.0) > kRowSumTolerance) {
      throw InputError(
          fmt::format("probabilities at frame {} sum to {:.17g}", t, sum));
    }
  }
}

ProbMatrix ProbMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  std::size_t columns = 0;
  auto values = Flatten(rows, &columns);
  return ProbMatrix(columns, std::move(values));
}

LogitMatrix::LogitMatrix(std::size_t columns, std::vector<double> values)
    : FrameMatrix(columns, std::move(values)) {
  for (std::size_t i = 0; i < this->values().size(); ++i) {
    if (!std::isfinite(this->values()[i])) {
      throw InputError(fmt::format("logit at frame {} column {} is not finite",
                                   i / columns, i % columns));
    }
  }
}

LogitMatrix LogitMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  std::size_t columns = 0;
  auto values = Flatten(rows, &columns);
  return LogitMatrix(columns, std::move(values));
}

ProbMatrix softmax_rows(const LogitMatrix& logits) {
  const std::size_t columns = logits.columns();
  std::vector<double> out(logits.values().begin(), logits.values().end());
  for (std::size_t t = 0; t < logits.frames(); ++t) {
    double* row = out.data() + t * columns;
    const double max = *std::max_element(row, row + columns);
    double sum = 0.0;
    for (std::size_t c = 0; c < columns; ++c) {
      row[c] = std::exp(row[c] - max);
      sum += row[c];
    }
    for (std::size_t c = 0; c < columns; ++c) row[c] /= sum;
  }
  return ProbMatrix(columns, std::move(out));
}

Labeling collapse(const Path& path, const Alphabet& alphabet) {
  Labeling out;
  const std::size_t blank = alphabet.blank_index();
  std::size_t previous = blank;
  for (std::size_t t = 0; t < path.size(); ++t) {
    const std::size_t index = path[t];
    if (index > blank) {
      throw InputError(fmt::format("path index {} at frame {} exceeds blank {}",
                                   index, t, blank));
    }
    if (index != blank && (t == 0 || index != previous)) {
      out.push_back(alphabet.at(index));
    }
    previous = index;
  }
  return out;
}

Path best_path(const ProbMatrix& m) {
  Path path(m.frames());
  for (std::size_t t = 0; t < m.frames(); ++t) {
    const auto row = m.row(t);
    // max_element returns the first maximum, i.e. the lowest column on ties.
    path[t] = static_cast<std::size_t>(
        std::max_element(row.begin(), row.end()) - row.begin());
  }
  return path;
}

Labeling best_path_decode(const ProbMatrix& m, const Alphabet& alphabet) {
  m.CheckAlphabet(alphabet);
  return collapse(best_path(m), alphabet);
}

double labeling_probability(const ProbMatrix& m, const Labeling& labeling,
                            const Alphabet& alphabet) {
  m.CheckAlphabet(alphabet);
  std::vector<std::size_t> label;
  label.reserve(labeling.size());
  for (char32_t c : labeling) {
    auto index = alphabet.index_of(c);
    if (!index) {
      throw InputError(fmt::format("labeling character U+{:04X} not in alphabet",
                                   static_cast<std::uint32_t>(c)));
    }
    label.push_back(*index);
  }

  const std::size_t frames = m.frames();
  const std::size_t blank = alphabet.blank_index();
  std::size_t required = label.size();
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] == label[i - 1]) ++required;
  }
  if (required > frames) return 0.0;
  if (frames == 0) return 1.0;  // only the empty labeling reaches here

  // Extended label: blank, l1, blank, l2, ..., blank.
  const std::size_t states = 2 * label.size() + 1;
  auto symbol = [&](std::size_t s) {
    return s % 2 == 0 ? blank : label[s / 2];
  };
  std::vector<double> alpha(states, 0.0);
  std::vector<double> next(states, 0.0);
  alpha[0] = m.at(0, blank);
  if (states > 1) alpha[1] = m.at(0, label[0]);
  for (std::size_t t = 1; t < frames; ++t) {
    for (std::size_t s = 0; s < states; ++s) {
      double sum = alpha[s];
      if (s >= 1) sum += alpha[s - 1];
      if (s >= 2 && s % 2 == 1 && label[s / 2] != label[s / 2 - 1]) {
        sum += alpha[s - 2];
      }
      next[s] = sum * m.at(t, symbol(s));
    }
    std::swap(alpha, next);
  }
  double total = alpha[states - 1];
  if (states > 1) total += alpha[states - 2];
  return total;
}

std::map<Labeling, double> enumerate_labelings(const ProbMatrix& m,
                                               const Alphabet& alphabet,
                                               std::uint64_t path_cap) {
  m.CheckAlphabet(alphabet);
  const std::size_t columns = m.columns();
  const std::size_t frames = m.frames();
  std::uint64_t count = 1;
  for (std::size_t t = 0; t < frames; ++t) {
    if (count > path_cap / columns) {
      throw CapExceededError(fmt::format(
          "{}^{} paths exceed the enumeration cap of {}", columns, frames,
          path_cap));
    }
    count *= columns;
  }
  if (count > path_cap) {
    throw CapExceededError(fmt::format(
        "{} paths exceed the enumeration cap of {}", count, path_cap));
  }

  std::map<Labeling, double> mass;
  Path path(frames, 0);
  for (std::uint64_t n = 0; n < count; ++n) {
    double p = 1.0;
    for (std::size_t t = 0; t < frames; ++t) p *= m.at(t, path[t]);
    mass[collapse(path, alphabet)] += p;
    // Odometer increment, last frame fastest.
    for (std::size_t t = frames; t-- > 0;) {
      if (++path[t] < columns) break;
      path[t] = 0;
    }
  }
  return mass;
}

ScoredLabeling enumerate_decode(const ProbMatrix& m, const Alphabet& alphabet,
                                std::uint64_t path_cap) {
  ScoredLabeling best;
  bool first = true;
  // std::map iterates in lexicographic order, so strict > keeps the smallest.
  for (const auto& [text, p] : enumerate_labelings(m, alphabet, path_cap)) {
    if (first || p > best.probability) {
      best = {text, p};
      first = false;
    }
  }
  return best;
}

}  // namespace lexidecode
