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

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "crossdoc/model.hpp"

// Span-level text similarity: weighted token edit distance, the normalized
// span similarity the soft metrics are built on, entity similarity (best
// mention match), and a small rule lemmatizer for the lemma baseline.

namespace crossdoc {

// Levenshtein costs. Substitutions are twice as expensive as an insert or a
// delete by default, which makes the normalized similarity equal the token
// F1 of the two spans (2*LCS / (len_a + len_b)).
struct EditCosts {
  int substitution = 2;
  int insertion = 1;
  int deletion = 1;
};

// Weighted token-level Levenshtein distance. Token equality is exact string
// comparison (callers fold case first if they want it). Symmetric when
// insertion and deletion costs match. Throws DomainError on costs < 1.
long token_edit_distance(const std::vector<std::string>& a,
                         const std::vector<std::string>& b,
                         const EditCosts& costs = {});

// Normalized similarity of two non-empty token spans:
//   1 - E / ((S - 1) * min(len_a, len_b) + max(len_a, len_b))
// where E is token_edit_distance and S the substitution cost; clamped at 0
// (the raw value can dip below 0 when S > 2). In [0, 1]; 1 iff the spans are
// token-identical. Throws DomainError naming the empty side.
double span_similarity(const std::vector<std::string>& predicted,
                       const std::vector<std::string>& reference,
                       const EditCosts& costs = {});

// Best span_similarity between the predicted tokens and any mention of the
// entity. Throws DomainError when the entity has no mentions.
double entity_similarity(const std::vector<std::string>& predicted,
                         const ArgumentEntity& entity,
                         const EditCosts& costs = {});

// ASCII lowercasing (multibyte UTF-8 passes through).
std::string lower_ascii(std::string_view s);
std::vector<std::string> fold_tokens(const std::vector<std::string>& tokens);

// token -> lemma overrides for irregular forms; keys are stored lowercased
// because lemmatize() lowercases before lookup.
class LemmaTable {
 public:
  // Two-column file: token TAB lemma, one pair per line, blank lines
  // ignored. Throws SchemaError on unreadable file or malformed line.
  static LemmaTable from_file(const std::string& path);

  void insert(std::string token, std::string lemma);
  const std::string* find(const std::string& token) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::string> entries_;
};

// Crude deterministic lemmatizer: lowercase, table lookup, then the first
// applicable rule from a fixed suffix list (-ies, -es, -s, -ing, -ed, -est,
// -er) with undo of consonant doubling (running -> run) except after l, s,
// or z (selling -> sell). Rules never leave a stem under three characters,
// so short function words pass through. Irregular forms belong in the table.
std::string lemmatize(std::string_view token, const LemmaTable* table = nullptr);

}  // namespace crossdoc
