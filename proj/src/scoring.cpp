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

#include "crossdoc/scoring.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

namespace crossdoc {
namespace {

std::string join_ids(const std::set<std::string>& ids) {
  std::string out;
  for (const std::string& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

// Exact credit: offset equality against the scored document, except that a
// prediction whose offsets refer to some other document (foreign) can only
// match by surface tokens.
bool exact_match(const TokenSpan& predicted, const TokenSpan& mention) {
  if (predicted.foreign) return predicted.surface == mention.surface;
  return predicted.same_offsets(mention);
}

}  // namespace

const char* to_string(MatchMode mode) {
  return mode == MatchMode::kExact ? "exact" : "soft";
}

const char* to_string(RefsMode refs) {
  return refs == RefsMode::kMention ? "mention" : "cluster";
}

MatchMode match_mode_from_string(std::string_view s) {
  if (s == "exact") return MatchMode::kExact;
  if (s == "soft") return MatchMode::kSoft;
  throw SchemaError("unknown match mode \"" + std::string(s) + "\"");
}

RefsMode refs_mode_from_string(std::string_view s) {
  if (s == "mention") return RefsMode::kMention;
  if (s == "cluster") return RefsMode::kCluster;
  throw SchemaError("unknown refs mode \"" + std::string(s) + "\"");
}

PRF finalize_prf(double precision_numerator, double precision_denominator,
                 double recall_numerator, double recall_denominator) {
  PRF out;
  out.precision_numerator = precision_numerator;
  out.precision_denominator = precision_denominator;
  out.recall_numerator = recall_numerator;
  out.recall_denominator = recall_denominator;
  out.precision = precision_denominator > 0.0
                      ? precision_numerator / precision_denominator
                      : (recall_denominator == 0.0 ? 1.0 : 0.0);
  out.recall = recall_denominator > 0.0
                   ? recall_numerator / recall_denominator
                   : (precision_denominator == 0.0 ? 1.0 : 0.0);
  out.f1 = out.precision + out.recall > 0.0
               ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
               : 0.0;
  return out;
}

SVResult score_sv(const std::vector<SVExample>& gold,
                  const std::map<std::string, bool>& predictions) {
  if (gold.empty()) throw DomainError("no examples to score");
  std::set<std::string> missing;
  std::set<std::string> known;
  for (const SVExample& ex : gold) {
    known.insert(ex.id);
    if (predictions.find(ex.id) == predictions.end()) missing.insert(ex.id);
  }
  if (!missing.empty()) {
    throw DomainError("missing predictions for ids: " + join_ids(missing));
  }
  std::set<std::string> unknown;
  for (const auto& [id, label] : predictions) {
    (void)label;
    if (!known.count(id)) unknown.insert(id);
  }
  if (!unknown.empty()) {
    throw DomainError("predictions for unknown ids: " + join_ids(unknown));
  }

  double tp = 0, fp = 0, fn = 0, correct = 0;
  for (const SVExample& ex : gold) {
    const bool predicted = predictions.at(ex.id);
    if (predicted == ex.positive) correct += 1;
    if (predicted && ex.positive) tp += 1;
    if (predicted && !ex.positive) fp += 1;
    if (!predicted && ex.positive) fn += 1;
  }
  SVResult result;
  result.examples = gold.size();
  result.accuracy = correct / static_cast<double>(gold.size());
  result.positive = finalize_prf(tp, tp + fp, tp, tp + fn);
  return result;
}

RoleAlignment align_role(const std::vector<TokenSpan>& predictions,
                         const std::vector<ArgumentEntity>& references,
                         MatchMode mode, const EditCosts& costs) {
  RoleAlignment out;
  std::vector<double> entity_best(references.size(), 0.0);
  for (const TokenSpan& predicted : predictions) {
    MentionAlignment detail;
    detail.predicted = predicted;
    for (std::size_t c = 0; c < references.size(); ++c) {
      double s = 0.0;
      if (mode == MatchMode::kExact) {
        for (const TokenSpan& mention : references[c].mentions) {
          if (exact_match(predicted, mention)) {
            s = 1.0;
            break;
          }
        }
      } else {
        s = entity_similarity(predicted.surface, references[c], costs);
      }
      entity_best[c] = std::max(entity_best[c], s);
      if (s > detail.similarity) {
        detail.similarity = s;
        detail.entity = c;
      }
    }
    out.precision_numerator += detail.similarity;
    out.mentions.push_back(std::move(detail));
  }
  for (double best : entity_best) {
    out.recall_numerator += std::min(1.0, best);
  }
  return out;
}

namespace {

// References as scored: per role, the entities with the mention lists the
// refs mode allows, surfaces case-folded on demand.
std::map<std::string, std::vector<ArgumentEntity>> scoring_refs(
    const CDAEExample& example, const CeafRmeOptions& options) {
  std::map<std::string, std::vector<ArgumentEntity>> out;
  for (const auto& [role, entities] : example.refs(options.side)) {
    std::vector<ArgumentEntity> kept;
    kept.reserve(entities.size());
    for (const ArgumentEntity& entity : entities) {
      ArgumentEntity scored = entity;
      if (options.refs == RefsMode::kMention && scored.mentions.size() > 1) {
        scored.mentions.resize(1);
      }
      if (options.case_fold) {
        for (TokenSpan& mention : scored.mentions) {
          mention.surface = fold_tokens(mention.surface);
        }
      }
      kept.push_back(std::move(scored));
    }
    out.emplace(role, std::move(kept));
  }
  return out;
}

// Prediction spans as scored: surfaces recomputed from the document they
// index into (foreign spans keep the surface they carry), then case-folded.
std::vector<TokenSpan> scoring_predictions(const std::vector<TokenSpan>& spans,
                                           const CDAEExample& example,
                                           const std::string& role,
                                           const CeafRmeOptions& options) {
  std::vector<TokenSpan> out;
  out.reserve(spans.size());
  for (const TokenSpan& span : spans) {
    TokenSpan scored = span;
    if (scored.foreign) {
      if (scored.surface.empty()) {
        throw DomainError("example " + example.id + " role " + role +
                          ": foreign prediction span carries no surface tokens");
      }
    } else {
      scored.surface =
          span_surface(example.doc(options.side), scored.start, scored.end,
                       "example " + example.id + " role " + role +
                           " prediction");
    }
    if (options.case_fold) scored.surface = fold_tokens(scored.surface);
    out.push_back(std::move(scored));
  }
  return out;
}

}  // namespace

namespace {

// Scores one example; warnings for it are collected separately so the
// parallel driver can splice them back together in example order.
ExampleScore score_example(const CDAEExample& example,
                           const PredictionSet* preds,
                           const FrameOntology& ontology,
                           const CeafRmeOptions& options,
                           std::vector<std::string>& warnings) {
  static const std::map<std::string, std::vector<TokenSpan>> kNoArgs;
  static const std::vector<ArgumentEntity> kNoEntities;
  static const std::vector<TokenSpan> kNoSpans;
  const auto refs = scoring_refs(example, options);
  const auto& args = preds == nullptr ? kNoArgs : preds->args;

  ExampleScore row;
  row.example_id = example.id;
  const std::vector<std::string>* frame_roles =
      ontology.roles(example.trigger.frame);
  std::set<std::string> roles;
  for (const auto& [role, entities] : refs) {
    (void)entities;
    roles.insert(role);
  }
  for (const auto& [role, spans] : args) {
    (void)spans;
    roles.insert(role);
  }
  for (const std::string& role : roles) {
    auto refs_it = refs.find(role);
    const auto& role_refs = refs_it == refs.end() ? kNoEntities : refs_it->second;
    auto args_it = args.find(role);
    const auto& role_spans = args_it == args.end() ? kNoSpans : args_it->second;

    const bool known_role =
        frame_roles != nullptr &&
        std::find(frame_roles->begin(), frame_roles->end(), role) !=
            frame_roles->end();
    if (!known_role && !role_spans.empty()) {
      // Off-ontology predictions stay in the precision denominator but can
      // never earn credit.
      warnings.push_back("example " + example.id + ": predicted role \"" +
                         role + "\" is not a role of frame \"" +
                         example.trigger.frame + "\"");
      row.precision_denominator += static_cast<double>(role_spans.size());
      continue;
    }

    const auto scored = scoring_predictions(role_spans, example, role, options);
    RoleAlignment aligned =
        align_role(scored, role_refs, options.mode, options.costs);
    row.precision_numerator += aligned.precision_numerator;
    row.precision_denominator += static_cast<double>(scored.size());
    row.recall_numerator += aligned.recall_numerator;
    row.recall_denominator += static_cast<double>(role_refs.size());
  }
  return row;
}

}  // namespace

CeafRmeResult score_ceaf_rme(const std::vector<CDAEExample>& gold,
                             const std::vector<PredictionSet>& predictions,
                             const FrameOntology& ontology,
                             const CeafRmeOptions& options) {
  std::map<std::string, const CDAEExample*> by_id;
  for (const CDAEExample& ex : gold) by_id.emplace(ex.id, &ex);

  std::map<std::string, const PredictionSet*> preds_by_id;
  for (const PredictionSet& preds : predictions) {
    if (preds.side != options.side) continue;
    if (!by_id.count(preds.example_id)) {
      throw DomainError("prediction for unknown example id \"" +
                        preds.example_id + "\"");
    }
    preds_by_id[preds.example_id] = &preds;
  }

  // Work items in example-id order; rows/warnings land by index, so merge
  // order (and every float sum) is independent of the worker count.
  std::vector<std::pair<const CDAEExample*, const PredictionSet*>> work;
  work.reserve(by_id.size());
  for (const auto& [id, example] : by_id) {
    auto it = preds_by_id.find(id);
    work.emplace_back(example, it == preds_by_id.end() ? nullptr : it->second);
  }

  std::vector<ExampleScore> rows(work.size());
  std::vector<std::vector<std::string>> row_warnings(work.size());
  std::vector<std::exception_ptr> failures(work.size());
  const int jobs =
      std::max(1, std::min<int>(options.jobs, static_cast<int>(work.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i) {
      rows[i] = score_example(*work[i].first, work[i].second, ontology, options,
                              row_warnings[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (std::size_t i = next.fetch_add(1); i < work.size();
           i = next.fetch_add(1)) {
        try {
          rows[i] = score_example(*work[i].first, work[i].second, ontology,
                                  options, row_warnings[i]);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  CeafRmeResult result;
  double pn = 0, pd = 0, rn = 0, rd = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    pn += rows[i].precision_numerator;
    pd += rows[i].precision_denominator;
    rn += rows[i].recall_numerator;
    rd += rows[i].recall_denominator;
    for (std::string& warning : row_warnings[i]) {
      result.warnings.push_back(std::move(warning));
    }
  }
  result.per_example = std::move(rows);
  result.examples = work.size();
  result.prf = finalize_prf(pn, pd, rn, rd);
  return result;
}

std::vector<std::string> bottom_quartile(
    const std::map<std::string, double>& scores) {
  if (scores.empty()) throw DomainError("no scores given");
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& [id, score] : scores) {
    (void)id;
    values.push_back(score);
  }
  std::sort(values.begin(), values.end());
  // nearest-rank 25th percentile: the ceil(n/4)-th smallest value
  const std::size_t rank = (values.size() + 3) / 4;
  const double threshold = values[rank - 1];

  std::vector<std::pair<double, std::string>> kept;
  for (const auto& [id, score] : scores) {
    if (score <= threshold) kept.emplace_back(score, id);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<std::string> out;
  out.reserve(kept.size());
  for (auto& [score, id] : kept) {
    (void)score;
    out.push_back(std::move(id));
  }
  return out;
}

}  // namespace crossdoc
