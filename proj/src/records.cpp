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

#include "crossdoc/records.hpp"

#include <fstream>
#include <utility>

#include "json.hpp"

namespace crossdoc {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Schema failure inside one record; loaders turn it into a RecordError or a
// SchemaError with file:line context.
class FieldError : public std::runtime_error {
 public:
  explicit FieldError(const std::string& what) : std::runtime_error(what) {}
};

bool blank(const std::string& line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object()) throw FieldError("record is not an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FieldError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) {
    throw FieldError(std::string("field \"") + key + "\" must be a string");
  }
  return v.get<std::string>();
}

int require_int(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_number_integer()) {
    throw FieldError(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

double require_number(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_number()) {
    throw FieldError(std::string("field \"") + key + "\" must be a number");
  }
  return v.get<double>();
}

std::vector<std::string> string_list(const json& v, const std::string& what) {
  if (!v.is_array()) throw FieldError(what + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& item : v) {
    if (!item.is_string()) {
      throw FieldError(what + " must be an array of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<double> number_list(const json& v, const std::string& what) {
  if (!v.is_array()) throw FieldError(what + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& item : v) {
    if (!item.is_number()) {
      throw FieldError(what + " must be an array of numbers");
    }
    out.push_back(item.get<double>());
  }
  return out;
}

Document parse_document(const json& rec, const char* key) {
  const json& d = require(rec, key);
  if (!d.is_object()) {
    throw FieldError(std::string("field \"") + key + "\" must be an object");
  }
  if (d.contains("tokens")) {
    return Document::from_tokens(
        string_list(d["tokens"], std::string(key) + ".tokens"));
  }
  if (d.contains("text")) {
    const json& t = d["text"];
    if (!t.is_string()) {
      throw FieldError(std::string(key) + ".text must be a string");
    }
    return Document::from_text(t.get<std::string>());
  }
  throw FieldError(std::string(key) + " needs \"text\" or \"tokens\"");
}

// A span that fits its document carries the covered tokens as surface;
// out-of-range offsets are left for validation to report.
void fill_surface(TokenSpan& span, const Document& doc) {
  if (span.start >= 0 && span.start < span.end &&
      span.end <= static_cast<int>(doc.size())) {
    span.surface.assign(doc.tokens.begin() + span.start,
                        doc.tokens.begin() + span.end);
  }
}

TokenSpan parse_span(const json& obj, const std::string& what) {
  if (!obj.is_object()) throw FieldError(what + " must be an object");
  TokenSpan span;
  span.start = require_int(obj, "start");
  span.end = require_int(obj, "end");
  return span;
}

EventTrigger parse_trigger(const json& rec, const Document& report) {
  const json& doc = require(rec, "report");
  EventTrigger trigger;
  trigger.span = parse_span(require(doc, "trigger"), "report.trigger");
  fill_surface(trigger.span, report);
  trigger.frame = require_string(rec, "frame");
  return trigger;
}

bool parse_label(const json& rec) {
  std::string label = require_string(rec, "label");
  if (label == "positive") return true;
  if (label == "negative") return false;
  throw FieldError("field \"label\" must be \"positive\" or \"negative\"");
}

std::map<std::string, std::vector<ArgumentEntity>> parse_args(
    const json& rec, const char* key, DocSide side, const Document& doc) {
  const json& args = require(rec, key);
  if (!args.is_object()) {
    throw FieldError(std::string("field \"") + key + "\" must be an object");
  }
  std::map<std::string, std::vector<ArgumentEntity>> out;
  for (const auto& [role, entities] : args.items()) {
    if (!entities.is_array() || entities.empty()) {
      throw FieldError(std::string(key) + "." + role +
                       " must be a non-empty array of entities");
    }
    std::vector<ArgumentEntity> parsed;
    parsed.reserve(entities.size());
    for (std::size_t i = 0; i < entities.size(); ++i) {
      const std::string what =
          std::string(key) + "." + role + "[" + std::to_string(i) + "]";
      if (!entities[i].is_object()) {
        throw FieldError(what + " must be an object");
      }
      const json& mentions = require(entities[i], "mentions");
      if (!mentions.is_array() || mentions.empty()) {
        throw FieldError(what + ".mentions must be a non-empty array");
      }
      ArgumentEntity entity;
      entity.role = role;
      entity.side = side;
      for (std::size_t m = 0; m < mentions.size(); ++m) {
        TokenSpan span = parse_span(
            mentions[m], what + ".mentions[" + std::to_string(m) + "]");
        fill_surface(span, doc);
        entity.mentions.push_back(std::move(span));
      }
      parsed.push_back(std::move(entity));
    }
    out.emplace(role, std::move(parsed));
  }
  return out;
}

// Runs `parse` over every non-blank line, collecting failures as
// RecordErrors keyed to the 1-based line number.
template <typename Example, typename Parse>
Corpus<Example> load_corpus(const std::string& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  Corpus<Example> corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    std::string id;
    try {
      json rec = json::parse(line);
      id = require_string(rec, "id");
      corpus.examples.push_back(parse(rec, id));
    } catch (const std::exception& e) {
      corpus.errors.push_back(RecordError{lineno, id, e.what()});
    }
  }
  return corpus;
}

// Shared JSONL scaffolding for the strict loaders: any per-line failure is a
// SchemaError carrying file:line.
template <typename Handle>
void for_each_record(const std::string& path, Handle handle) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    try {
      handle(json::parse(line));
    } catch (const std::exception& e) {
      throw SchemaError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

SVCorpus load_sv_corpus(const std::string& path) {
  return load_corpus<SVExample>(path, [](const json& rec, const std::string& id) {
    SVExample ex;
    ex.id = id;
    ex.report = parse_document(rec, "report");
    ex.source = parse_document(rec, "source");
    ex.trigger = parse_trigger(rec, ex.report);
    ex.positive = parse_label(rec);
    if (rec.contains("provenance")) {
      ex.provenance = provenance_from_string(require_string(rec, "provenance"));
    }
    return ex;
  });
}

CDAECorpus load_cdae_corpus(const std::string& path) {
  return load_corpus<CDAEExample>(
      path, [](const json& rec, const std::string& id) {
        CDAEExample ex;
        ex.id = id;
        ex.report = parse_document(rec, "report");
        ex.source = parse_document(rec, "source");
        ex.trigger = parse_trigger(rec, ex.report);
        ex.report_refs =
            parse_args(rec, "report_args", DocSide::kReport, ex.report);
        ex.source_refs =
            parse_args(rec, "source_args", DocSide::kSource, ex.source);
        return ex;
      });
}

std::vector<PredictionSet> load_predictions(const std::string& path) {
  std::vector<PredictionSet> out;
  std::set<std::pair<std::string, std::string>> seen;
  for_each_record(path, [&](const json& rec) {
    PredictionSet preds;
    preds.example_id = require_string(rec, "id");
    preds.side = doc_side_from_string(require_string(rec, "side"));
    if (!seen.emplace(preds.example_id, to_string(preds.side)).second) {
      throw FieldError("duplicate prediction for id \"" + preds.example_id +
                       "\" side \"" + to_string(preds.side) + "\"");
    }
    const json& args = require(rec, "args");
    if (!args.is_object()) throw FieldError("field \"args\" must be an object");
    for (const auto& [role, spans] : args.items()) {
      if (!spans.is_array()) {
        throw FieldError("args." + role + " must be an array of spans");
      }
      std::vector<TokenSpan> parsed;
      for (std::size_t i = 0; i < spans.size(); ++i) {
        TokenSpan span =
            parse_span(spans[i], "args." + role + "[" + std::to_string(i) + "]");
        if (spans[i].contains("surface")) {
          span.surface = string_list(spans[i]["surface"],
                                     "args." + role + ".surface");
        }
        if (spans[i].contains("foreign")) {
          const json& f = spans[i]["foreign"];
          if (!f.is_boolean()) {
            throw FieldError("args." + role + ".foreign must be a boolean");
          }
          span.foreign = f.get<bool>();
        }
        parsed.push_back(std::move(span));
      }
      preds.args.emplace(role, std::move(parsed));
    }
    out.push_back(std::move(preds));
  });
  return out;
}

std::map<std::string, bool> load_labels(const std::string& path) {
  std::map<std::string, bool> out;
  for_each_record(path, [&](const json& rec) {
    std::string id = require_string(rec, "id");
    if (out.count(id)) throw FieldError("duplicate label for id \"" + id + "\"");
    out.emplace(std::move(id), parse_label(rec));
  });
  return out;
}

FrameOntology load_ontology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  FrameOntology ontology;
  try {
    const json& frames = require(doc, "frames");
    if (!frames.is_object()) throw FieldError("\"frames\" must be an object");
    for (const auto& [frame, body] : frames.items()) {
      if (!body.is_object()) {
        throw FieldError("frame \"" + frame + "\" must be an object");
      }
      std::vector<std::string> roles =
          string_list(require(body, "roles"), "frame \"" + frame + "\" roles");
      if (roles.empty()) {
        throw FieldError("frame \"" + frame + "\" has no roles");
      }
      std::set<std::string> unique(roles.begin(), roles.end());
      if (unique.size() != roles.size()) {
        throw FieldError("frame \"" + frame + "\" has duplicate roles");
      }
      if (!unique.count("Time") || !unique.count("Place")) {
        throw FieldError("frame \"" + frame +
                         "\" must include Time and Place roles");
      }
      bool situation = false;
      if (body.contains("situation")) {
        if (!body["situation"].is_boolean()) {
          throw FieldError("frame \"" + frame +
                           "\" situation must be a boolean");
        }
        situation = body["situation"].get<bool>();
      }
      ontology.frames.emplace(frame, std::move(roles));
      ontology.situation_flags.emplace(frame, situation);
    }
  } catch (const std::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return ontology;
}

std::vector<CandidatePair> load_candidate_pool(const std::string& path) {
  std::vector<CandidatePair> out;
  std::set<std::string> seen;
  for_each_record(path, [&](const json& rec) {
    CandidatePair pair;
    pair.id = require_string(rec, "id");
    if (!seen.insert(pair.id).second) {
      throw FieldError("duplicate candidate id \"" + pair.id + "\"");
    }
    pair.frame = require_string(rec, "frame");
    pair.report_ref = require_string(rec, "report");
    pair.source_ref = require_string(rec, "source");
    pair.lemma = require_string(rec, "lemma");
    if (rec.contains("vector")) {
      pair.embedding = number_list(rec["vector"], "field \"vector\"");
    }
    if (rec.contains("source_text")) {
      if (!rec["source_text"].is_string()) {
        throw FieldError("field \"source_text\" must be a string");
      }
      pair.source_text = rec["source_text"].get<std::string>();
    }
    if (rec.contains("similarity")) {
      if (!rec["similarity"].is_number()) {
        throw FieldError("field \"similarity\" must be a number");
      }
      pair.similarity = rec["similarity"].get<double>();
    }
    out.push_back(std::move(pair));
  });
  return out;
}

std::vector<FrameStats> load_frame_stats(const std::string& path) {
  std::vector<FrameStats> out;
  std::set<std::string> seen;
  for_each_record(path, [&](const json& rec) {
    FrameStats stats;
    stats.frame = require_string(rec, "frame");
    if (!seen.insert(stats.frame).second) {
      throw FieldError("duplicate stats for frame \"" + stats.frame + "\"");
    }
    stats.precision = require_number(rec, "precision");
    const json& support = require(rec, "support");
    if (!support.is_number_integer()) {
      throw FieldError("field \"support\" must be an integer");
    }
    stats.support = support.get<long>();
    stats.p_avg = require_number(rec, "p_avg");
    stats.validator_accuracy = require_number(rec, "v");
    out.push_back(std::move(stats));
  });
  return out;
}

std::set<std::string> load_id_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    out.insert(line.substr(start));
  }
  return out;
}

std::string prediction_record(const PredictionSet& preds) {
  ordered_json rec;
  rec["id"] = preds.example_id;
  rec["side"] = to_string(preds.side);
  ordered_json args = ordered_json::object();
  for (const auto& [role, spans] : preds.args) {
    ordered_json list = ordered_json::array();
    for (const TokenSpan& span : spans) {
      ordered_json s;
      s["start"] = span.start;
      s["end"] = span.end;
      if (!span.surface.empty()) s["surface"] = span.surface;
      if (span.foreign) s["foreign"] = true;
      list.push_back(std::move(s));
    }
    args[role] = std::move(list);
  }
  rec["args"] = std::move(args);
  return rec.dump();
}

std::string label_record(const std::string& id, bool positive) {
  ordered_json rec;
  rec["id"] = id;
  rec["label"] = positive ? "positive" : "negative";
  return rec.dump();
}

std::string candidate_record(const CandidatePair& pair) {
  ordered_json rec;
  rec["id"] = pair.id;
  rec["frame"] = pair.frame;
  rec["report"] = pair.report_ref;
  rec["source"] = pair.source_ref;
  rec["lemma"] = pair.lemma;
  if (pair.embedding) rec["vector"] = *pair.embedding;
  if (pair.source_text) rec["source_text"] = *pair.source_text;
  if (pair.similarity) rec["similarity"] = *pair.similarity;
  return rec.dump();
}

}  // namespace crossdoc
