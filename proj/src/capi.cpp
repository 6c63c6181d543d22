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

#include "crossdoc/crossdoc.h"

#include <exception>
#include <string>
#include <utility>

#include "crossdoc/runner.hpp"

struct crossdoc_result {
  crossdoc::CommandResult value;
};

namespace {

thread_local std::string g_last_error;

std::string arg(const char* s) { return s == nullptr ? std::string() : s; }

// Runs a command body, mapping the exception taxonomy onto status codes.
template <typename Fn>
crossdoc_status wrap(crossdoc_result** out, Fn&& fn) {
  if (out == nullptr) {
    g_last_error = "result out-parameter must not be null";
    return CROSSDOC_ERR_USAGE;
  }
  *out = nullptr;
  try {
    crossdoc::CommandResult value = fn();
    *out = new crossdoc_result{std::move(value)};
    g_last_error.clear();
    return CROSSDOC_OK;
  } catch (const crossdoc::DomainError& e) {
    g_last_error = e.what();
    return CROSSDOC_ERR_DOMAIN;
  } catch (const crossdoc::SchemaError& e) {
    g_last_error = e.what();
    return CROSSDOC_ERR_SCHEMA;
  } catch (const crossdoc::ProviderError& e) {
    g_last_error = e.what();
    return CROSSDOC_ERR_PROVIDER;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CROSSDOC_ERR_DOMAIN;
  }
}

}  // namespace

extern "C" {

const char* crossdoc_version(void) { return "0.1.0"; }

const char* crossdoc_last_error(void) { return g_last_error.c_str(); }

void crossdoc_result_free(crossdoc_result* result) { delete result; }

const char* crossdoc_result_document(const crossdoc_result* result) {
  return result == nullptr ? nullptr : result->value.document_json.c_str();
}

const char* crossdoc_result_records(const crossdoc_result* result) {
  if (result == nullptr || !result->value.records) return nullptr;
  return result->value.records->c_str();
}

const char* crossdoc_result_table(const crossdoc_result* result) {
  if (result == nullptr || !result->value.table) return nullptr;
  return result->value.table->c_str();
}

const char* crossdoc_result_chart(const crossdoc_result* result) {
  if (result == nullptr || !result->value.chart_svg) return nullptr;
  return result->value.chart_svg->c_str();
}

const char* crossdoc_result_summary(const crossdoc_result* result) {
  return result == nullptr ? nullptr : result->value.summary.c_str();
}

size_t crossdoc_result_warning_count(const crossdoc_result* result) {
  return result == nullptr ? 0 : result->value.warnings.size();
}

const char* crossdoc_result_warning(const crossdoc_result* result,
                                    size_t index) {
  if (result == nullptr || index >= result->value.warnings.size()) {
    return nullptr;
  }
  return result->value.warnings[index].c_str();
}

int crossdoc_result_exit_code(const crossdoc_result* result) {
  return result == nullptr ? 0 : result->value.exit_code;
}

crossdoc_status crossdoc_validate(const char* task, const char* corpus,
                                  const char* ontology, crossdoc_result** out) {
  return wrap(out, [&] {
    crossdoc::ValidateArgs args;
    args.task = arg(task);
    args.corpus = arg(corpus);
    args.ontology = arg(ontology);
    return crossdoc::run_validate(args);
  });
}

crossdoc_status crossdoc_score_sv(const char* gold, const char* ontology,
                                  const char* predictions,
                                  crossdoc_result** out) {
  return wrap(out, [&] {
    crossdoc::ScoreSvArgs args;
    args.gold = arg(gold);
    args.ontology = arg(ontology);
    args.predictions = arg(predictions);
    return crossdoc::run_score_sv(args);
  });
}

crossdoc_status crossdoc_score_cdae(const char* gold, const char* ontology,
                                    const char* predictions, const char* side,
                                    const char* match, const char* refs,
                                    int ensemble_report_baseline,
                                    int case_fold, int per_example, int jobs,
                                    crossdoc_result** out) {
  return wrap(out, [&] {
    crossdoc::ScoreCdaeArgs args;
    args.gold = arg(gold);
    args.ontology = arg(ontology);
    args.predictions = arg(predictions);
    if (side != nullptr) args.side = crossdoc::doc_side_from_string(side);
    if (match != nullptr) args.match = match;
    if (refs != nullptr) args.refs = crossdoc::refs_mode_from_string(refs);
    args.ensemble_report_baseline = ensemble_report_baseline != 0;
    args.case_fold = case_fold != 0;
    args.per_example = per_example != 0;
    args.jobs = jobs < 1 ? 1 : jobs;
    return crossdoc::run_score_cdae(args);
  });
}

crossdoc_status crossdoc_agreement(const char* gold, const char* ontology,
                                   const char* annotator_a,
                                   const char* annotator_b,
                                   int bottom_quartile, int case_fold,
                                   crossdoc_result** out) {
  return wrap(out, [&] {
    crossdoc::AgreementArgs args;
    args.gold = arg(gold);
    args.ontology = arg(ontology);
    args.annotator_a = arg(annotator_a);
    args.annotator_b = arg(annotator_b);
    args.bottom_quartile = bottom_quartile != 0;
    args.case_fold = case_fold != 0;
    return crossdoc::run_agreement(args);
  });
}

crossdoc_status crossdoc_baseline(const char* kind, const char* corpus,
                                  const char* ontology,
                                  const char* train_labels,
                                  const char* lemma_table, const char* refs,
                                  crossdoc_result** out) {
  return wrap(out, [&] {
    crossdoc::BaselineArgs args;
    args.kind = arg(kind);
    args.corpus = arg(corpus);
    args.ontology = arg(ontology);
    args.train_labels = arg(train_labels);
    args.lemma_table = arg(lemma_table);
    if (refs != nullptr) args.refs = crossdoc::refs_mode_from_string(refs);
    return crossdoc::run_baseline(args);
  });
}

crossdoc_status crossdoc_plan(const char* stats, crossdoc_result** out) {
  return wrap(out, [&] {
    crossdoc::PlanArgs args;
    args.stats = arg(stats);
    return crossdoc::run_plan(args);
  });
}

crossdoc_status crossdoc_sample(const char* pool, const char* plan,
                                long target, unsigned long long seed,
                                const char* embedding_cache,
                                const char* provider_url,
                                crossdoc_result** out) {
  return wrap(out, [&] {
    crossdoc::SampleArgs args;
    args.pool = arg(pool);
    args.plan = arg(plan);
    args.target = target;
    args.seed = seed;
    args.embedding_cache = arg(embedding_cache);
    args.provider_url = arg(provider_url);
    return crossdoc::run_sample(args);
  });
}

crossdoc_status crossdoc_mine_negatives(const char* pool,
                                        const char* annotated,
                                        const char* targets, long count,
                                        unsigned long long seed,
                                        const char* similarity_cache,
                                        const char* provider_url,
                                        crossdoc_result** out) {
  return wrap(out, [&] {
    crossdoc::MineArgs args;
    args.pool = arg(pool);
    args.annotated = arg(annotated);
    args.targets = arg(targets);
    args.count = count;
    args.seed = seed;
    args.similarity_cache = arg(similarity_cache);
    args.provider_url = arg(provider_url);
    return crossdoc::run_mine_negatives(args);
  });
}

crossdoc_status crossdoc_bins(const char* metric, const char* gold,
                              const char* ontology, const char* predictions,
                              const char* side, const char* refs,
                              int case_fold, crossdoc_result** out) {
  return wrap(out, [&] {
    crossdoc::BinsArgs args;
    args.metric = arg(metric);
    args.gold = arg(gold);
    args.ontology = arg(ontology);
    args.predictions = arg(predictions);
    if (side != nullptr) args.side = crossdoc::doc_side_from_string(side);
    if (refs != nullptr) args.refs = crossdoc::refs_mode_from_string(refs);
    args.case_fold = case_fold != 0;
    return crossdoc::run_bins(args);
  });
}

}  // extern "C"
