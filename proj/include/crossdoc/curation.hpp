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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crossdoc/model.hpp"
#include "crossdoc/provider.hpp"

// Dataset-construction machinery: annotation budget planning from parser
// precision, diversity-aware stratified sampling over candidate pools, and
// similarity-based mining of hard negative (report, source) pairs.

namespace crossdoc {

// Per-frame inputs to the budget planner. `precision` is the frame parser's
// test precision on this frame, `p_avg` its average over all frames (used
// when the frame has fewer than 10 test examples), `validator_accuracy` the
// accuracy of the validation model.
struct FrameStats {
  std::string frame;
  double precision = 0.0;
  long support = 0;
  double p_avg = 0.0;
  double validator_accuracy = 0.0;
};

// Expected number of annotations needed to obtain five positive examples,
// modeled as the mean of a negative binomial with r = 5 successes and success
// probability precision * validator_accuracy:
//   ceil(5 / (P_i * v))     when the frame has support >= 10
//   ceil(5 / (P_avg * v))   otherwise
// Throws DomainError when any probability is outside (0, 1].
long plan_sample_size(const FrameStats& stats);

// frame id -> planned annotation count
struct SamplingPlan {
  std::map<std::string, long> counts;
};

struct CandidatePair {
  std::string id;
  std::string frame;
  std::string report_ref;
  std::string source_ref;
  std::string lemma;  // report trigger lemma
  std::optional<std::vector<double>> embedding;
  std::optional<std::string> source_text;
  std::optional<double> similarity;  // the pair's own report-source score
};

struct KMeansResult {
  std::vector<int> assignment;            // point -> cluster
  std::vector<std::vector<double>> centroids;
  std::vector<double> objective;          // sum of squared distances, per iteration
  int iterations = 0;
};

// Seeded k-means++ initialization followed by Lloyd iterations until the
// assignment reaches a fixpoint or 100 iterations. An empty cluster is
// repaired by stealing the farthest point from the largest cluster. Fully
// deterministic for a fixed seed. Throws DomainError when k exceeds the
// number of vectors or dimensions are inconsistent.
KMeansResult kmeans(const std::vector<std::vector<double>>& vectors, int k,
                    std::uint64_t seed);

struct SampleOutcome {
  std::vector<CandidatePair> selected;
  bool truncated = false;  // requested more than the pool holds
};

// Picks min(target, pool size) pairs, one per k-means cluster over the pool
// embeddings, preferring trigger-lemma diversity across the selection
// (maximum matching between clusters and lemmas; candidate order within a
// cluster is a seeded shuffle). Throws DomainError when any pool member lacks
// an embedding.
SampleOutcome stratified_sample(const std::vector<CandidatePair>& pool,
                                long target, std::uint64_t seed);

struct MinedNegative {
  std::string report_ref;   // the target's report
  std::string source_ref;   // highest-similarity non-self source
  std::string candidate_id; // pool pair the source came from
  double score = 0.0;
};

// Pairs the target's report with the highest-similarity source among pool
// pairs that are not annotated, not the target itself, and do not share the
// target's source. Ties go to the smallest candidate id. Throws DomainError
// when no candidate remains.
MinedNegative mine_silver_negative(const CandidatePair& target,
                                   const std::vector<CandidatePair>& pool,
                                   const std::set<std::string>& annotated_ids,
                                   SimilarityProvider& provider);

// "First five sentences" feature text for embedding: sentences end at
// '.', '!' or '?' followed by whitespace (or end of text).
std::string first_sentences(const std::string& text, int max_sentences);

// Deterministic Fisher-Yates permutation of 0..n-1 for the given seed; the
// shared source of shuffle order for sampling decisions.
std::vector<std::size_t> seeded_order(std::size_t n, std::uint64_t seed);

}  // namespace crossdoc
