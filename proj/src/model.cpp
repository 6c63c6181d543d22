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

#include <algorithm>
#include <tuple>

namespace crossdoc {

const char* to_string(DocSide side) {
  return side == DocSide::kReport ? "report" : "source";
}

DocSide doc_side_from_string(std::string_view s) {
  if (s == "report") return DocSide::kReport;
  if (s == "source") return DocSide::kSource;
  throw SchemaError("unknown document side: '" + std::string(s) + "'");
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kGold: return "gold";
    case Provenance::kSilver: return "silver";
    case Provenance::kPlatinum: return "platinum";
  }
  return "gold";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "gold") return Provenance::kGold;
  if (s == "silver") return Provenance::kSilver;
  if (s == "platinum") return Provenance::kPlatinum;
  throw SchemaError("unknown provenance: '" + std::string(s) + "'");
}

Document Document::from_text(std::string text) {
  Document doc;
  doc.tokens = tokenize(text);
  doc.text = std::move(text);
  return doc;
}

Document Document::from_tokens(std::vector<std::string> tokens) {
  Document doc;
  doc.tokens = std::move(tokens);
  return doc;
}

std::vector<std::string> span_surface(const Document& doc, int start, int end,
                                      const std::string& context) {
  if (start < 0 || start >= end ||
      static_cast<std::size_t>(end) > doc.tokens.size()) {
    throw DomainError(context + ": span [" + std::to_string(start) + "," +
                      std::to_string(end) + ") does not fit a document of " +
                      std::to_string(doc.tokens.size()) + " tokens");
  }
  return std::vector<std::string>(doc.tokens.begin() + start,
                                  doc.tokens.begin() + end);
}

std::size_t PredictionSet::mention_count() const {
  std::size_t n = 0;
  for (const auto& [role, spans] : args) n += spans.size();
  return n;
}

const std::vector<std::string>* FrameOntology::roles(
    const std::string& frame) const {
  auto it = frames.find(frame);
  return it == frames.end() ? nullptr : &it->second;
}

bool FrameOntology::has_role(const std::string& frame,
                             const std::string& role) const {
  const auto* r = roles(frame);
  return r && std::find(r->begin(), r->end(), role) != r->end();
}

void ValidationReport::canonicalize() {
  std::sort(violations.begin(), violations.end(),
            [](const Violation& a, const Violation& b) {
              return std::tie(a.example_id, a.path, a.message) <
                     std::tie(b.example_id, b.path, b.message);
            });
}

namespace {

void check_span_fits(const std::string& id, const std::string& path,
                     const TokenSpan& span, const Document& doc,
                     ValidationReport& report) {
  if (span.start < 0 || span.start >= span.end ||
      static_cast<std::size_t>(span.end) > doc.tokens.size()) {
    report.violations.push_back(
        {id, path,
         "span [" + std::to_string(span.start) + "," +
             std::to_string(span.end) + ") does not fit a document of " +
             std::to_string(doc.tokens.size()) + " tokens"});
  }
}

void check_document(const std::string& id, const std::string& path,
                    const Document& doc, ValidationReport& report) {
  if (doc.tokens.empty()) {
    report.violations.push_back({id, path, "document has no tokens"});
    return;
  }
  if (!doc.text.empty() && doc.tokens != tokenize(doc.text)) {
    report.violations.push_back(
        {id, path, "supplied tokens disagree with tokenize(text)"});
  }
}

void check_trigger(const std::string& id, const EventTrigger& trigger,
                   const Document& report_doc, const FrameOntology& ontology,
                   ValidationReport& report) {
  check_span_fits(id, "report.trigger", trigger.span, report_doc, report);
  if (!ontology.has_frame(trigger.frame)) {
    report.violations.push_back(
        {id, "frame",
         "frame '" + trigger.frame + "' is not in the ontology"});
  }
}

void check_duplicate_ids(const std::vector<std::string>& ids,
                         ValidationReport& report) {
  std::map<std::string, int> seen;
  for (const auto& id : ids) ++seen[id];
  for (const auto& [id, n] : seen) {
    if (n > 1) {
      report.violations.push_back(
          {id, "id", "example id occurs " + std::to_string(n) + " times"});
    }
  }
}

void check_entities(
    const CDAEExample& ex, DocSide side,
    const std::map<std::string, std::vector<ArgumentEntity>>& refs,
    const FrameOntology& ontology, ValidationReport& report) {
  const Document& doc = ex.doc(side);
  const std::string prefix =
      side == DocSide::kReport ? "report_args." : "source_args.";
  const bool frame_known = ontology.has_frame(ex.trigger.frame);
  for (const auto& [role, entities] : refs) {
    if (frame_known && !ontology.has_role(ex.trigger.frame, role)) {
      report.violations.push_back(
          {ex.id, prefix + role,
           "role '" + role + "' is not in the role set of frame '" +
               ex.trigger.frame + "' (FrameOntology)"});
    }
    for (std::size_t e = 0; e < entities.size(); ++e) {
      const auto& entity = entities[e];
      const std::string epath = prefix + role + "[" + std::to_string(e) + "]";
      if (entity.mentions.empty()) {
        report.violations.push_back({ex.id, epath, "entity has no mentions"});
        continue;
      }
      std::set<std::pair<int, int>> offsets;
      for (std::size_t m = 0; m < entity.mentions.size(); ++m) {
        const auto& span = entity.mentions[m];
        const std::string mpath = epath + ".mentions[" + std::to_string(m) + "]";
        check_span_fits(ex.id, mpath, span, doc, report);
        if (!offsets.insert({span.start, span.end}).second) {
          report.violations.push_back(
              {ex.id, mpath, "duplicate mention offsets within entity"});
        }
      }
    }
  }
}

}  // namespace

ValidationReport validate_corpus(const std::vector<SVExample>& examples,
                                 const FrameOntology& ontology) {
  ValidationReport report;
  report.records = examples.size();
  std::vector<std::string> ids;
  ids.reserve(examples.size());
  for (const auto& ex : examples) {
    ids.push_back(ex.id);
    check_document(ex.id, "report", ex.report, report);
    check_document(ex.id, "source", ex.source, report);
    check_trigger(ex.id, ex.trigger, ex.report, ontology, report);
  }
  check_duplicate_ids(ids, report);
  report.canonicalize();
  return report;
}

ValidationReport validate_corpus(const std::vector<CDAEExample>& examples,
                                 const FrameOntology& ontology) {
  ValidationReport report;
  report.records = examples.size();
  std::vector<std::string> ids;
  ids.reserve(examples.size());
  for (const auto& ex : examples) {
    ids.push_back(ex.id);
    check_document(ex.id, "report", ex.report, report);
    check_document(ex.id, "source", ex.source, report);
    check_trigger(ex.id, ex.trigger, ex.report, ontology, report);
    check_entities(ex, DocSide::kReport, ex.report_refs, ontology, report);
    check_entities(ex, DocSide::kSource, ex.source_refs, ontology, report);
  }
  check_duplicate_ids(ids, report);
  report.canonicalize();
  return report;
}

}  // namespace crossdoc
