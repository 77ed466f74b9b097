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

#ifndef LEXIDECODE_TEXT_H_
#define LEXIDECODE_TEXT_H_

#include <string>
#include <string_view>

namespace lexidecode {

// Decodes UTF-8. Throws ParseError naming `source` and the byte offset of the
// first invalid sequence.
std::u32string utf8_to_u32(std::string_view bytes,
                           const std::string& source = "<text>");

std::string u32_to_utf8(std::u32string_view text);

}  // namespace lexidecode

#endif  // LEXIDECODE_TEXT_H_
