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

#include "lexidecode/io.h"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "lexidecode/error.h"
#include "lexidecode/text.h"

namespace lexidecode {

namespace fs = std::filesystem;

namespace {

// Cursor over a byte buffer that reports positions for ParseError.
class Reader {
 public:
  Reader(std::string_view content, const std::string& source)
      : content_(content), source_(source) {}

  std::size_t offset() const { return pos_; }
  bool done() const { return pos_ >= content_.size(); }

  [[noreturn]] void Fail(const std::string& what) const { FailAt(pos_, what); }
  [[noreturn]] void FailAt(std::size_t offset, const std::string& what) const {
    throw ParseError(source_, offset, what);
  }

  // Next line without its terminator; the final line may lack a '\n'.
  std::string_view Line() {
    if (done()) Fail("unexpected end of file");
    const auto end = content_.find('\n', pos_);
    const auto stop = end == std::string_view::npos ? content_.size() : end;
    auto line = content_.substr(pos_, stop - pos_);
    pos_ = end == std::string_view::npos ? content_.size() : end + 1;
    return line;
  }

 private:
  std::string_view content_;
  const std::string& source_;
  std::size_t pos_ = 0;
};

std::size_t ParseCount(std::string_view text, std::string_view field,
                       const Reader& reader, std::size_t at) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    reader.FailAt(at, fmt::format("bad {} value '{}'", field, text));
  }
  return value;
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> SplitWhitespace(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool ParseBool(std::string_view value, const Reader& reader, std::size_t at) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  reader.FailAt(at, fmt::format("expected true or false, got '{}'", value));
}

}  // namespace

std::string FormatCtcm(const LineMatrix& matrix) {
  const auto& base = std::visit(
      [](const auto& m) -> const FrameMatrix& { return m; }, matrix);
  const bool logits = std::holds_alternative<LogitMatrix>(matrix);
  std::string out = fmt::format("ctcm 1\nT={} C={} kind={}\n", base.frames(),
                                base.columns() - 1, logits ? "logit" : "prob");
  for (std::size_t t = 0; t < base.frames(); ++t) {
    const auto row = base.row(t);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out.push_back(' ');
      out += fmt::format("{:.17g}", row[c]);
    }
    out.push_back('\n');
  }
  return out;
}

LineMatrix ParseCtcm(std::string_view content, const std::string& source) {
  Reader reader(content, source);
  if (reader.Line() != "ctcm 1") reader.FailAt(0, "expected header 'ctcm 1'");

  const std::size_t shape_at = reader.offset();
  const auto shape = SplitWhitespace(reader.Line());
  if (shape.size() != 3 || !shape[0].starts_with("T=") ||
      !shape[1].starts_with("C=") || !shape[2].starts_with("kind=")) {
    reader.FailAt(shape_at, "expected 'T=<int> C=<int> kind=<prob|logit>'");
  }
  const std::size_t frames = ParseCount(shape[0].substr(2), "T", reader, shape_at);
  const std::size_t columns =
      ParseCount(shape[1].substr(2), "C", reader, shape_at) + 1;
  const auto kind = shape[2].substr(5);
  if (kind != "prob" && kind != "logit") {
    reader.FailAt(shape_at, fmt::format("unknown kind '{}'", kind));
  }
  const bool logits = kind == "logit";

  std::vector<double> values;
  values.reserve(frames * columns);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t row_at = reader.offset();
    const auto line = reader.Line();
    std::size_t pos = 0;
    double sum = 0.0;
    for (std::size_t c = 0; c < columns; ++c) {
      if (c > 0) {
        if (pos >= line.size() || line[pos] != ' ') {
          reader.FailAt(row_at + pos, fmt::format("frame {} has {} values, "
                                                  "expected {}",
                                                  t, c, columns));
        }
        ++pos;
      }
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(line.data() + pos, line.data() + line.size(), value);
      if (ec != std::errc() || ptr == line.data() + pos) {
        reader.FailAt(row_at + pos, "expected a decimal number");
      }
      if (!std::isfinite(value) || (!logits && value < 0.0)) {
        reader.FailAt(row_at + pos,
                      logits ? "logit is not finite"
                             : "probability is not a finite value >= 0");
      }
      sum += value;
      values.push_back(value);
      pos = static_cast<std::size_t>(ptr - line.data());
    }
    if (pos != line.size()) {
      reader.FailAt(row_at + pos,
                    fmt::format("frame {} has more than {} values", t, columns));
    }
    if (!logits && std::fabs(sum - 1.0) > ProbMatrix::kRowSumTolerance) {
      reader.FailAt(row_at, fmt::format("probabilities of frame {} sum to {:.17g}",
                                        t, sum));
    }
  }
  while (!reader.done()) {
    const std::size_t at = reader.offset();
    if (!Trim(reader.Line()).empty()) reader.FailAt(at, "trailing data");
  }

  if (logits) return LogitMatrix(columns, std::move(values));
  return ProbMatrix(columns, std::move(values));
}

std::string ReadFileBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileBytes(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot write {}", path.string()));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError(fmt::format("failed writing {}", path.string()));
}

LineMatrix ReadCtcm(const fs::path& path) {
  return ParseCtcm(ReadFileBytes(path), path.string());
}

void WriteCtcm(const fs::path& path, const LineMatrix& matrix) {
  WriteFileBytes(path, FormatCtcm(matrix));
}

std::u32string ReadTextLine(const fs::path& path) {
  std::string bytes = ReadFileBytes(path);
  if (bytes.ends_with('\n')) bytes.pop_back();
  if (bytes.ends_with('\r')) bytes.pop_back();
  return utf8_to_u32(bytes, path.string());
}

Alphabet ReadAlphabet(const fs::path& path) {
  const auto chars = ReadTextLine(path);
  if (chars.find(U'\n') != std::u32string::npos) {
    throw InputError(fmt::format("{}: alphabet must be a single line",
                                 path.string()));
  }
  try {
    return Alphabet(chars);
  } catch (const InputError& e) {
    throw InputError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

Corpus ReadCorpus(const std::vector<fs::path>& paths,
                  const WordCharSet& word_chars, std::string description) {
  Corpus corpus;
  corpus.description = std::move(description);
  for (const auto& path : paths) {
    const auto text = utf8_to_u32(ReadFileBytes(path), path.string());
    corpus.Merge(Corpus::FromText(text, word_chars));
  }
  return corpus;
}

Manifest ParseManifest(std::string_view content, const fs::path& base_dir,
                       const std::string& source) {
  Manifest manifest;
  Reader reader(content, source);
  while (!reader.done()) {
    const std::size_t at = reader.offset();
    const auto line = Trim(reader.Line());
    if (line.empty() || line.front() == '#') continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) reader.FailAt(at, "expected '<key> = <value>'");
    const auto head = SplitWhitespace(line.substr(0, eq));
    const auto value = Trim(line.substr(eq + 1));
    if (head.empty() || head.size() > 2) {
      reader.FailAt(at, "expected '<key> [<name>] = <value>'");
    }
    const auto key = head[0];
    const bool named = key == "corpus" || key == "line";
    if (named != (head.size() == 2)) {
      reader.FailAt(at, named ? fmt::format("'{}' needs a name", key)
                              : fmt::format("'{}' takes no name", key));
    }

    if (key == "alphabet") {
      manifest.alphabet_path = base_dir / std::string(value);
    } else if (key == "word_chars") {
      manifest.word_chars = utf8_to_u32(value, source);
    } else if (key == "corpus") {
      ManifestCorpus corpus{std::string(head[1]), {}};
      for (const auto& name : manifest.corpora) {
        if (name.name == corpus.name) {
          reader.FailAt(at, fmt::format("duplicate corpus '{}'", corpus.name));
        }
      }
      for (auto file : SplitWhitespace(value)) {
        corpus.paths.push_back(base_dir / std::string(file));
      }
      if (corpus.paths.empty()) reader.FailAt(at, "corpus lists no files");
      manifest.corpora.push_back(std::move(corpus));
    } else if (key == "line") {
      const auto files = SplitWhitespace(value);
      if (files.empty() || files.size() > 2) {
        reader.FailAt(at, "expected '<matrix> [<ground truth>]'");
      }
      ManifestLine entry{std::string(head[1]), base_dir / std::string(files[0]),
                         std::nullopt};
      if (files.size() == 2) entry.ground_truth_path = base_dir / std::string(files[1]);
      manifest.lines.push_back(std::move(entry));
    } else if (key == "beam_width") {
      manifest.config.beam_width = ParseCount(value, "beam_width", reader, at);
      if (manifest.config.beam_width == 0) reader.FailAt(at, "beam_width must be >= 1");
    } else if (key == "require_complete_words") {
      manifest.config.require_complete_words = ParseBool(value, reader, at);
    } else if (key == "log_space") {
      manifest.config.log_space = ParseBool(value, reader, at);
    } else if (key == "mode") {
      if (value != "words") reader.FailAt(at, "only mode 'words' is supported");
    } else {
      reader.FailAt(at, fmt::format("unknown key '{}'", key));
    }
  }
  return manifest;
}

Manifest ReadManifest(const fs::path& path) {
  return ParseManifest(ReadFileBytes(path), path.parent_path(), path.string());
}

LoadedRun LoadRun(const Manifest& manifest) {
  if (manifest.alphabet_path.empty()) {
    throw InputError("manifest has no 'alphabet' entry");
  }
  if (manifest.corpora.empty()) {
    throw InputError("manifest has no 'corpus' entry");
  }
  Alphabet alphabet = ReadAlphabet(manifest.alphabet_path);
  WordCharSet word_chars = manifest.word_chars
                               ? WordCharSet(*manifest.word_chars)
                               : WordCharSet::AlphabeticIn(alphabet);
  word_chars.CheckSubsetOf(alphabet);

  std::vector<NamedCorpus> corpora;
  for (const auto& entry : manifest.corpora) {
    corpora.push_back({entry.name, ReadCorpus(entry.paths, word_chars, entry.name)});
  }

  std::vector<ParagraphRecord> paragraphs;
  std::map<std::string, std::size_t> index;
  for (const auto& line : manifest.lines) {
    auto [it, inserted] = index.try_emplace(line.paragraph_id, paragraphs.size());
    if (inserted) paragraphs.push_back({line.paragraph_id, {}});
    auto& paragraph = paragraphs[it->second];

    LineMatrix matrix = ReadCtcm(line.matrix_path);
    try {
      std::visit([&](const auto& m) { m.CheckAlphabet(alphabet); }, matrix);
    } catch (const InputError& e) {
      throw InputError(fmt::format("{}: {}", line.matrix_path.string(), e.what()));
    }
    std::optional<std::u32string> truth;
    if (line.ground_truth_path) truth = ReadTextLine(*line.ground_truth_path);
    paragraph.lines.push_back(
        {fmt::format("{}/{}", line.paragraph_id, paragraph.lines.size() + 1),
         std::move(matrix), std::move(truth)});
  }

  return {std::move(alphabet), std::move(word_chars), std::move(corpora),
          std::move(paragraphs), manifest.config};
}

}  // namespace lexidecode
