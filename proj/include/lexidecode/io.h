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

#ifndef LEXIDECODE_IO_H_
#define LEXIDECODE_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexidecode/ctc.h"
#include "lexidecode/lexicon.h"
#include "lexidecode/pipeline.h"
#include "lexidecode/wbs.h"

namespace lexidecode {

// .ctcm matrix files (text, UTF-8/ASCII):
//
//   ctcm 1
//   T=<frames> C=<characters> kind=<prob|logit>
//   <C+1 decimal numbers separated by single spaces>   (T lines)
//
// Column C is the blank. Values are written with 17 significant digits so a
// write/read round trip is exact.
std::string FormatCtcm(const LineMatrix& matrix);
// Throws ParseError naming `source` and the byte offset of the fault.
LineMatrix ParseCtcm(std::string_view content, const std::string& source);

LineMatrix ReadCtcm(const std::filesystem::path& path);
void WriteCtcm(const std::filesystem::path& path, const LineMatrix& matrix);

// Whole file as bytes. Throws InputError if it cannot be opened.
std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

// UTF-8 text with at most one trailing line break ("\n" or "\r\n") removed.
std::u32string ReadTextLine(const std::filesystem::path& path);

// Alphabet file: one UTF-8 line listing the characters in column order.
Alphabet ReadAlphabet(const std::filesystem::path& path);

// Union of the words of every file, tokenized with `word_chars`.
Corpus ReadCorpus(const std::vector<std::filesystem::path>& paths,
                  const WordCharSet& word_chars, std::string description);

// Manifest files are line oriented UTF-8. Blank lines and lines starting with
// '#' are ignored; every other line is `<key> [<name>] = <value>`:
//
//   alphabet = alphabet.txt
//   word_chars = abcdefghijklmnopqrstuvwxyz
//   corpus test = corpus_test.txt
//   corpus extended = corpus_test.txt words_370k.txt
//   beam_width = 50
//   require_complete_words = false
//   log_space = false
//   line p01 = lines/p01_1.ctcm gt/p01_1.txt
//
// Paths are relative to the manifest's directory and may not contain spaces.
// `word_chars` is optional (default: alphabetic alphabet characters). `line`
// entries sharing a paragraph id form one paragraph, lines in file order; the
// ground-truth path is optional.
struct ManifestCorpus {
  std::string name;
  std::vector<std::filesystem::path> paths;
};

struct ManifestLine {
  std::string paragraph_id;
  std::filesystem::path matrix_path;
  std::optional<std::filesystem::path> ground_truth_path;
};

struct Manifest {
  std::filesystem::path alphabet_path;
  std::optional<std::u32string> word_chars;
  std::vector<ManifestCorpus> corpora;
  std::vector<ManifestLine> lines;
  DecodeConfig config;
};

// Throws ParseError on malformed lines.
Manifest ParseManifest(std::string_view content,
                       const std::filesystem::path& base_dir,
                       const std::string& source);
Manifest ReadManifest(const std::filesystem::path& path);

// Every file a manifest references, loaded and cross-checked.
struct LoadedRun {
  Alphabet alphabet;
  WordCharSet word_chars;
  std::vector<NamedCorpus> corpora;
  std::vector<ParagraphRecord> paragraphs;
  DecodeConfig config;
};

// Throws InputError (naming the file) for missing files, malformed matrices
// or a matrix whose column count does not match the alphabet.
LoadedRun LoadRun(const Manifest& manifest);

}  // namespace lexidecode

#endif  // LEXIDECODE_IO_H_
