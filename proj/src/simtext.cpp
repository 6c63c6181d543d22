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

#include "crossdoc/simtext.hpp"

#include <algorithm>
#include <fstream>

namespace crossdoc {
namespace {

void check_costs(const EditCosts& costs) {
  if (costs.substitution < 1 || costs.insertion < 1 || costs.deletion < 1) {
    throw DomainError("edit costs must be >= 1");
  }
}

bool ascii_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool doubled_consonant(const std::string& stem) {
  if (stem.size() < 2) return false;
  char c = stem[stem.size() - 1];
  if (c != stem[stem.size() - 2]) return false;
  if (c < 'a' || c > 'z' || ascii_vowel(c)) return false;
  return c != 'l' && c != 's' && c != 'z';
}

// Strip `suffix` and undo consonant doubling on the remaining stem.
std::string strip_undouble(const std::string& word, std::size_t suffix) {
  std::string stem = word.substr(0, word.size() - suffix);
  if (doubled_consonant(stem)) stem.pop_back();
  return stem;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

long token_edit_distance(const std::vector<std::string>& a,
                         const std::vector<std::string>& b,
                         const EditCosts& costs) {
  check_costs(costs);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<long> prev(m + 1);
  std::vector<long> cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<long>(j) * costs.insertion;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = static_cast<long>(i) * costs.deletion;
    for (std::size_t j = 1; j <= m; ++j) {
      long substitute =
          prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : costs.substitution);
      long erase = prev[j] + costs.deletion;
      long insert = cur[j - 1] + costs.insertion;
      cur[j] = std::min({substitute, erase, insert});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

double span_similarity(const std::vector<std::string>& predicted,
                       const std::vector<std::string>& reference,
                       const EditCosts& costs) {
  check_costs(costs);
  if (predicted.empty()) throw DomainError("predicted span is empty");
  if (reference.empty()) throw DomainError("reference span is empty");
  const long lp = static_cast<long>(predicted.size());
  const long lg = static_cast<long>(reference.size());
  const long denom =
      (costs.substitution - 1) * std::min(lp, lg) + std::max(lp, lg);
  const long distance = token_edit_distance(predicted, reference, costs);
  const double value = 1.0 - static_cast<double>(distance) / denom;
  return value < 0.0 ? 0.0 : value;
}

double entity_similarity(const std::vector<std::string>& predicted,
                         const ArgumentEntity& entity,
                         const EditCosts& costs) {
  if (entity.mentions.empty()) {
    throw DomainError("entity for role \"" + entity.role + "\" has no mentions");
  }
  double best = 0.0;
  for (const TokenSpan& mention : entity.mentions) {
    best = std::max(best, span_similarity(predicted, mention.surface, costs));
  }
  return best;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> fold_tokens(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) out.push_back(lower_ascii(t));
  return out;
}

LemmaTable LemmaTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  LemmaTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw SchemaError(path + ":" + std::to_string(lineno) +
                        ": expected token TAB lemma");
    }
    table.insert(line.substr(0, tab), line.substr(tab + 1));
  }
  return table;
}

void LemmaTable::insert(std::string token, std::string lemma) {
  entries_[lower_ascii(token)] = std::move(lemma);
}

const std::string* LemmaTable::find(const std::string& token) const {
  auto it = entries_.find(token);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string lemmatize(std::string_view token, const LemmaTable* table) {
  std::string word = lower_ascii(token);
  if (table != nullptr) {
    if (const std::string* lemma = table->find(word)) return *lemma;
  }
  const std::size_t n = word.size();
  if (ends_with(word, "ies") && n >= 5) {
    return word.substr(0, n - 3) + "y";
  }
  if (ends_with(word, "es") && n >= 4) {
    const std::string stem = word.substr(0, n - 2);
    if (ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
        ends_with(stem, "ch") || ends_with(stem, "sh")) {
      return stem;
    }
  }
  if (ends_with(word, "s") && !ends_with(word, "ss") && n >= 4) {
    return word.substr(0, n - 1);
  }
  if (ends_with(word, "ing") && n >= 6) {
    return strip_undouble(word, 3);
  }
  if (ends_with(word, "ed") && n >= 5) {
    return strip_undouble(word, 2);
  }
  if (ends_with(word, "est") && n >= 6) {
    return strip_undouble(word, 3);
  }
  if (ends_with(word, "er") && n >= 5) {
    return strip_undouble(word, 2);
  }
  return word;
}

}  // namespace crossdoc
