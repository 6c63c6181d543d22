/* Copyright 2026 The crossdoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the crossdoc library. Every command takes UTF-8 file paths
 * and scalar options, runs to completion, and hands back an opaque result
 * holding the rendered output channels. Optional string arguments accept
 * NULL. Results must be released with crossdoc_result_free. All functions
 * are safe to call from multiple threads; the error message is thread-local.
 */

#pragma once

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as process exit codes. */
typedef enum crossdoc_status {
  CROSSDOC_OK = 0,
  CROSSDOC_ERR_DOMAIN = 1,   /* validation or domain-rule failure */
  CROSSDOC_ERR_SCHEMA = 2,   /* I/O, file format, record schema */
  CROSSDOC_ERR_PROVIDER = 3, /* remote provider failure after retries */
  CROSSDOC_ERR_USAGE = 4     /* invalid arguments to this interface */
} crossdoc_status;

typedef struct crossdoc_result crossdoc_result;

/* Library version, e.g. "0.1.0". Static storage. */
const char* crossdoc_version(void);

/* Message for the calling thread's most recent failure; empty after a
 * success. Valid until the thread's next crossdoc call. */
const char* crossdoc_last_error(void);

void crossdoc_result_free(crossdoc_result* result);

/* Accessors return pointers owned by the result, valid until it is freed.
 * Channels a command does not produce are NULL. */
const char* crossdoc_result_document(const crossdoc_result* result);
const char* crossdoc_result_records(const crossdoc_result* result);
const char* crossdoc_result_table(const crossdoc_result* result);
const char* crossdoc_result_chart(const crossdoc_result* result);
const char* crossdoc_result_summary(const crossdoc_result* result);
size_t crossdoc_result_warning_count(const crossdoc_result* result);
const char* crossdoc_result_warning(const crossdoc_result* result,
                                    size_t index);
/* 0 unless the command reports a non-fatal failure state (validate with
 * violations). */
int crossdoc_result_exit_code(const crossdoc_result* result);

/* task: "sv" | "cdae". */
crossdoc_status crossdoc_validate(const char* task, const char* corpus,
                                  const char* ontology, crossdoc_result** out);

crossdoc_status crossdoc_score_sv(const char* gold, const char* ontology,
                                  const char* predictions,
                                  crossdoc_result** out);

/* side: "report" | "source" (NULL = source); match: "exact" | "soft" |
 * "both" (NULL = exact); refs: "mention" | "cluster" (NULL = mention);
 * jobs < 1 behaves as 1. */
crossdoc_status crossdoc_score_cdae(const char* gold, const char* ontology,
                                    const char* predictions, const char* side,
                                    const char* match, const char* refs,
                                    int ensemble_report_baseline,
                                    int case_fold, int per_example, int jobs,
                                    crossdoc_result** out);

/* annotator_a supplies the reference annotation, annotator_b the predicted
 * one; both are prediction-record files joined on example id. */
crossdoc_status crossdoc_agreement(const char* gold, const char* ontology,
                                   const char* annotator_a,
                                   const char* annotator_b,
                                   int bottom_quartile, int case_fold,
                                   crossdoc_result** out);

/* kind: "majority" | "lemma" | "report". train_labels is required for
 * majority; lemma_table is optional for lemma (falls back to the
 * CROSSDOC_LEMMA_TABLE environment variable, then to rule-based
 * lemmatization); refs applies to report only. */
crossdoc_status crossdoc_baseline(const char* kind, const char* corpus,
                                  const char* ontology,
                                  const char* train_labels,
                                  const char* lemma_table, const char* refs,
                                  crossdoc_result** out);

crossdoc_status crossdoc_plan(const char* stats, crossdoc_result** out);

/* Exactly one of plan (a planning document or bare {frame: count} object)
 * and target (> 0, uniform per frame) selects the per-frame sample sizes.
 * provider_url ("host:port") falls back to CROSSDOC_PROVIDER_URL. */
crossdoc_status crossdoc_sample(const char* pool, const char* plan,
                                long target, unsigned long long seed,
                                const char* embedding_cache,
                                const char* provider_url,
                                crossdoc_result** out);

/* targets (id-list file) selects mining targets explicitly; otherwise every
 * pool pair outside annotated is a target, optionally subsampled to count
 * with the seed. A similarity source is required: a cache file, a provider
 * url, or CROSSDOC_PROVIDER_URL. */
crossdoc_status crossdoc_mine_negatives(const char* pool,
                                        const char* annotated,
                                        const char* targets, long count,
                                        unsigned long long seed,
                                        const char* similarity_cache,
                                        const char* provider_url,
                                        crossdoc_result** out);

/* metric: "sv-f1" | "ceaf-rme-a-f1"; side and refs apply to the latter. */
crossdoc_status crossdoc_bins(const char* metric, const char* gold,
                              const char* ontology, const char* predictions,
                              const char* side, const char* refs,
                              int case_fold, crossdoc_result** out);

#ifdef __cplusplus
} /* extern "C" */
#endif
