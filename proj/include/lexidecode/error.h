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

#ifndef LEXIDECODE_ERROR_H_
#define LEXIDECODE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexidecode {

// Malformed or inconsistent caller input. Maps to CLI exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A metric whose denominator is zero (no ground-truth characters or words).
class UndefinedMetricError : public InputError {
 public:
  using InputError::InputError;
};

// Failure while reading a file; carries the file name and byte offset.
class ParseError : public InputError {
 public:
  ParseError(std::string source, std::size_t offset, const std::string& what);

  const std::string& source() const { return source_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string source_;
  std::size_t offset_;
};

// An exhaustive oracle refused an instance larger than its cap. Exit status 3.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lexidecode

#endif  // LEXIDECODE_ERROR_H_
