// Copyright 2026 The Partisan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARTISAN_TEXT_HPP_
#define PARTISAN_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace partisan::text {

// Lowercases UTF-8 text with a fixed simple case mapping (ASCII, Latin-1,
// Latin Extended-A, Greek, Cyrillic). Other code points and invalid bytes
// are copied through unchanged, so the result never depends on the locale.
std::string to_lower(std::string_view s);

bool is_space(char c);

// Word characters are ASCII alphanumerics and every non-ASCII byte.
inline bool is_word_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z');
}

std::string_view trim(std::string_view s);

// Trims and collapses interior whitespace runs to one space.
std::string collapse_whitespace(std::string_view s);

struct Token {
  std::size_t begin = 0;  // byte offsets into the source text
  std::size_t end = 0;
  std::string lower;
};

// Splits on every non-word byte and lowercases each token.
std::vector<Token> tokenize(std::string_view s);

// Lowercase token strings only.
std::vector<std::string> lower_tokens(std::string_view s);

}  // namespace partisan::text

#endif  // PARTISAN_TEXT_HPP_
