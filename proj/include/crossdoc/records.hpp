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
#include <set>
#include <string>
#include <vector>

#include "crossdoc/curation.hpp"
#include "crossdoc/model.hpp"

// Newline-delimited record I/O. One JSON object per line. Schemas:
//
//   SV record          {"id","frame","label":"positive|negative",
//                       "provenance"?,
//                       "report":{"text"|"tokens","trigger":{"start","end"}},
//                       "source":{"text"|"tokens"}}
//   CDAE record        same document fields plus "report_args"/"source_args":
//                       {role: [{"mentions":[{"start","end"},...]},...]}
//                       (each list element is one entity; the first mention is
//                       the annotated one)
//   Prediction record  {"id","side":"report|source",
//                       "args":{role:[{"start","end",
//                                      "surface"?:[tokens],"foreign"?:bool},...]}}
//   Label record       {"id","label":"positive|negative"}  (SV predictions)
//   Ontology file      {"frames":{frame:{"roles":[...],"situation"?:bool}}}
//   Candidate pool     {"id","frame","report","source","lemma",
//                       "vector"?:[...],"source_text"?,"similarity"?}
//   Frame stats        {"frame","precision","support","p_avg","v"}
//   Similarity cache   {"report","source","score"}
//   Embedding cache    {"id","vector"} or {"text","vector"}

namespace crossdoc {

struct RecordError {
  std::size_t line = 0;  // 1-based
  std::string id;        // empty when the record's id could not be read
  std::string message;
};

template <typename Example>
struct Corpus {
  std::vector<Example> examples;
  std::vector<RecordError> errors;
};

using SVCorpus = Corpus<SVExample>;
using CDAECorpus = Corpus<CDAEExample>;

// Loaders collect per-record errors and keep going; an unreadable file throws
// SchemaError. Callers that need a clean corpus use require_clean().
SVCorpus load_sv_corpus(const std::string& path);
CDAECorpus load_cdae_corpus(const std::string& path);

template <typename Example>
void require_clean(const Corpus<Example>& corpus, const std::string& path) {
  if (corpus.errors.empty()) return;
  const auto& first = corpus.errors.front();
  throw SchemaError(path + ":" + std::to_string(first.line) + ": " +
                    first.message +
                    (corpus.errors.size() > 1
                         ? " (and " + std::to_string(corpus.errors.size() - 1) +
                               " more malformed records)"
                         : ""));
}

// Throws SchemaError on any malformed record or duplicate (id, side).
std::vector<PredictionSet> load_predictions(const std::string& path);
std::map<std::string, bool> load_labels(const std::string& path);

// Throws SchemaError if the file is unreadable or any frame violates the
// ontology invariants (non-empty duplicate-free roles including Time and
// Place).
FrameOntology load_ontology(const std::string& path);

std::vector<CandidatePair> load_candidate_pool(const std::string& path);
std::vector<FrameStats> load_frame_stats(const std::string& path);

// One id per line, blank lines ignored.
std::set<std::string> load_id_set(const std::string& path);

// Record serialization (stable field order, one line, no trailing newline).
std::string prediction_record(const PredictionSet& preds);
std::string label_record(const std::string& id, bool positive);
std::string candidate_record(const CandidatePair& pair);

}  // namespace crossdoc
