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

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Domain model shared by every other component: documents, spans, triggers,
// argument mentions/entities, the two task example types, and the frame
// ontology. All types are plain values, immutable by convention after
// construction, and safe for concurrent reads.

namespace crossdoc {

// Error taxonomy, mapped onto process exit codes by the CLI:
//   DomainError   -> 1 (validation or domain-rule failure)
//   SchemaError   -> 2 (I/O, file format, record schema)
//   ProviderError -> 3 (remote provider failure after retries)
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

class ProviderError : public std::runtime_error {
 public:
  explicit ProviderError(const std::string& what) : std::runtime_error(what) {}
};

enum class DocSide { kReport, kSource };

const char* to_string(DocSide side);
DocSide doc_side_from_string(std::string_view s);

// Whitespace tokenizer with edge punctuation split off into single-character
// tokens. Internal punctuation (hyphens, apostrophes, anything else) is kept
// inside the token. Deterministic; empty input gives an empty list. Only
// ASCII whitespace and ASCII punctuation are treated specially, so UTF-8
// multibyte sequences pass through untouched.
std::vector<std::string> tokenize(std::string_view text);

struct Document {
  std::vector<std::string> tokens;
  std::string text;  // empty when the record supplied tokens directly

  static Document from_text(std::string text);
  static Document from_tokens(std::vector<std::string> tokens);

  std::size_t size() const { return tokens.size(); }
};

// Token-index span, end-exclusive. `surface` carries the covered tokens; for
// spans whose offsets refer to a different document than the one they are
// scored against (`foreign`), the surface is the only usable identity.
struct TokenSpan {
  int start = 0;
  int end = 0;
  std::vector<std::string> surface;
  bool foreign = false;

  bool same_offsets(const TokenSpan& other) const {
    return start == other.start && end == other.end;
  }
  int length() const { return end - start; }
};

// Slice of document tokens; throws DomainError if the span does not fit.
std::vector<std::string> span_surface(const Document& doc, int start, int end,
                                      const std::string& context);

struct EventTrigger {
  TokenSpan span;  // within the report
  std::string frame;
};

struct ArgumentMention {
  std::string role;
  TokenSpan span;
  DocSide side = DocSide::kReport;
};

// A role-labeled coreference cluster of gold mentions. The first-listed
// mention is the human-annotated one; the rest come from a coreference model.
struct ArgumentEntity {
  std::string role;
  std::vector<TokenSpan> mentions;
  DocSide side = DocSide::kReport;
};

enum class Provenance { kGold, kSilver, kPlatinum };

const char* to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

struct SVExample {
  std::string id;
  Document report;
  EventTrigger trigger;
  Document source;
  bool positive = false;
  Provenance provenance = Provenance::kGold;
};

// Role absence encodes the null argument: a role with no entry in
// report_refs/source_refs was annotated as having no filler on that side.
struct CDAEExample {
  std::string id;
  Document report;
  EventTrigger trigger;
  Document source;
  std::map<std::string, std::vector<ArgumentEntity>> report_refs;
  std::map<std::string, std::vector<ArgumentEntity>> source_refs;

  const std::map<std::string, std::vector<ArgumentEntity>>& refs(
      DocSide side) const {
    return side == DocSide::kReport ? report_refs : source_refs;
  }
  const Document& doc(DocSide side) const {
    return side == DocSide::kReport ? report : source;
  }
};

// Model output for one example and one document side: role -> predicted
// mention spans. Spans are offsets into the side's document unless foreign.
struct PredictionSet {
  std::string example_id;
  DocSide side = DocSide::kReport;
  std::map<std::string, std::vector<TokenSpan>> args;

  std::size_t mention_count() const;
};

struct FrameOntology {
  // frame id -> ordered role list (core roles plus Time and Place)
  std::map<std::string, std::vector<std::string>> frames;
  std::map<std::string, bool> situation_flags;

  bool has_frame(const std::string& frame) const {
    return frames.count(frame) != 0;
  }
  // nullptr when the frame is unknown
  const std::vector<std::string>* roles(const std::string& frame) const;
  bool has_role(const std::string& frame, const std::string& role) const;
};

// One violated invariant. `path` points at the offending field
// (e.g. "report.trigger", "source_args.Victim[0].mentions[2]").
struct Violation {
  std::string example_id;
  std::string path;
  std::string message;
};

struct ValidationReport {
  std::size_t records = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  // canonical order: (example id, path, message)
  void canonicalize();
};

ValidationReport validate_corpus(const std::vector<SVExample>& examples,
                                 const FrameOntology& ontology);
ValidationReport validate_corpus(const std::vector<CDAEExample>& examples,
                                 const FrameOntology& ontology);

}  // namespace crossdoc
