// Copyright 2026 The crossdoc Authors
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

#include "crossdoc/model.hpp"

namespace crossdoc {

namespace {

inline bool ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  if (u >= 128) return false;
  return (u >= '!' && u <= '/') || (u >= ':' && u <= '@') ||
         (u >= '[' && u <= '`') || (u >= '{' && u <= '~');
}

void emit_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t i = 0;
  std::size_t j = chunk.size();
  while (i < j && ascii_punct(chunk[i])) ++i;
  while (j > i && ascii_punct(chunk[j - 1])) --j;
  for (std::size_t k = 0; k < i; ++k) out.emplace_back(1, chunk[k]);
  if (j > i) out.emplace_back(chunk.substr(i, j - i));
  for (std::size_t k = j; k < chunk.size(); ++k) out.emplace_back(1, chunk[k]);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && ascii_space(text[pos])) ++pos;
    std::size_t begin = pos;
    while (pos < text.size() && !ascii_space(text[pos])) ++pos;
    if (pos > begin) emit_chunk(text.substr(begin, pos - begin), tokens);
  }
  return tokens;
}

}  // namespace crossdoc
