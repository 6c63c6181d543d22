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

#include "crossdoc/curation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace crossdoc {
namespace {

// The standard engine is fully specified, so one seed gives one stream on
// every platform; the distribution helpers below are hand-rolled because the
// std distributions are not portable across standard libraries.
using Rng = std::mt19937_64;

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t bounded(Rng& rng, std::size_t n) {
  const auto draw = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  return draw >= n ? n - 1 : draw;
}

double squared_distance(const std::vector<double>& a,
                        const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    sum += diff * diff;
  }
  return sum;
}

void check_probability(double value, const char* name) {
  if (!(value > 0.0) || value > 1.0) {
    throw DomainError(std::string(name) + " must be in (0, 1]");
  }
}

// Augmenting path search for maximum bipartite matching (cluster -> lemma).
bool try_assign(int cluster, const std::vector<std::vector<int>>& options,
                std::vector<char>& visited, std::vector<int>& lemma_owner) {
  for (int lemma : options[cluster]) {
    if (visited[lemma]) continue;
    visited[lemma] = 1;
    if (lemma_owner[lemma] < 0 ||
        try_assign(lemma_owner[lemma], options, visited, lemma_owner)) {
      lemma_owner[lemma] = cluster;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<std::size_t> seeded_order(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[bounded(rng, i)]);
  }
  return order;
}

long plan_sample_size(const FrameStats& stats) {
  check_probability(stats.precision, "parser precision");
  check_probability(stats.p_avg, "average parser precision");
  check_probability(stats.validator_accuracy, "validator accuracy");
  if (stats.support < 0) throw DomainError("support count must be >= 0");
  // Mean of a negative binomial with r = 5 required successes; frames with
  // thin parser support fall back to the average precision.
  const double p =
      (stats.support >= 10 ? stats.precision : stats.p_avg) *
      stats.validator_accuracy;
  const double expected = 5.0 / p;
  // Snap values a hair above an integer back down before taking the
  // ceiling, so 5/0.2-style float noise cannot inflate the plan by one.
  return static_cast<long>(std::ceil(expected - 1e-9));
}

KMeansResult kmeans(const std::vector<std::vector<double>>& vectors, int k,
                    std::uint64_t seed) {
  const std::size_t n = vectors.size();
  if (k < 1) throw DomainError("k must be >= 1");
  if (static_cast<std::size_t>(k) > n) {
    throw DomainError("k exceeds the number of vectors (" +
                      std::to_string(k) + " > " + std::to_string(n) + ")");
  }
  const std::size_t dim = vectors[0].size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw DomainError("vectors differ in dimension");
  }

  Rng rng(seed);
  KMeansResult result;

  // k-means++ seeding: first centroid uniform, the rest drawn with
  // probability proportional to squared distance from the chosen set.
  std::vector<std::size_t> centers;
  std::vector<char> chosen(n, 0);
  const std::size_t first = bounded(rng, n);
  centers.push_back(first);
  chosen[first] = 1;
  std::vector<double> dist2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    dist2[i] = squared_distance(vectors[i], vectors[first]);
  }
  while (centers.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += dist2[i];
    std::size_t pick = n;
    if (total > 0.0) {
      const double r = uniform01(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += dist2[i];
        if (acc >= r && !chosen[i]) {
          pick = i;
          break;
        }
      }
    }
    if (pick == n) {
      // All remaining mass sits on already-chosen (or zero-distance) points;
      // fall back to the first unchosen index.
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) {
          pick = i;
          break;
        }
      }
    }
    centers.push_back(pick);
    chosen[pick] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      dist2[i] = std::min(dist2[i], squared_distance(vectors[i], vectors[pick]));
    }
  }
  result.centroids.reserve(centers.size());
  for (std::size_t c : centers) result.centroids.push_back(vectors[c]);

  // Lloyd iterations until the assignment stops changing.
  result.assignment.assign(n, -1);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<int> assignment(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = squared_distance(vectors[i], result.centroids[c]);
        if (d < best) {
          best = d;
          assignment[i] = c;
        }
      }
    }

    // Repair: hand an empty cluster the point farthest from its centroid
    // within the largest cluster.
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < n; ++i) ++sizes[assignment[i]];
    for (int c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      int largest = 0;
      for (int o = 1; o < k; ++o) {
        if (sizes[o] > sizes[largest]) largest = o;
      }
      std::size_t farthest = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (assignment[i] != largest) continue;
        const double d = squared_distance(vectors[i], result.centroids[largest]);
        if (d > far_d) {
          far_d = d;
          farthest = i;
        }
      }
      assignment[farthest] = c;
      --sizes[largest];
      ++sizes[c];
    }

    const bool converged = assignment == result.assignment;
    result.assignment = std::move(assignment);
    if (converged) break;
    ++result.iterations;

    // Mean update, then the objective for this iteration.
    std::vector<std::vector<double>> means(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int c = result.assignment[i];
      ++counts[c];
      for (std::size_t d = 0; d < dim; ++d) means[c][d] += vectors[i][d];
    }
    for (int c = 0; c < k; ++c) {
      for (std::size_t d = 0; d < dim; ++d) {
        means[c][d] /= static_cast<double>(counts[c]);
      }
    }
    result.centroids = std::move(means);
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      objective += squared_distance(vectors[i], result.centroids[result.assignment[i]]);
    }
    result.objective.push_back(objective);
  }
  return result;
}

SampleOutcome stratified_sample(const std::vector<CandidatePair>& pool,
                                long target, std::uint64_t seed) {
  if (pool.empty()) throw DomainError("candidate pool is empty");
  if (target < 1) throw DomainError("sample target must be >= 1");
  std::vector<std::vector<double>> embeddings;
  embeddings.reserve(pool.size());
  for (const CandidatePair& pair : pool) {
    if (!pair.embedding) {
      throw DomainError("candidate \"" + pair.id + "\" has no embedding");
    }
    embeddings.push_back(*pair.embedding);
  }

  SampleOutcome outcome;
  outcome.truncated = target > static_cast<long>(pool.size());
  const int k = static_cast<int>(
      std::min<long>(target, static_cast<long>(pool.size())));
  const KMeansResult clusters = kmeans(embeddings, k, seed);

  // Members per cluster, ordered by the seeded shuffle: that order decides
  // which of several same-lemma candidates represents the cluster.
  const std::vector<std::size_t> order = seeded_order(pool.size(), seed);
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t pos : order) {
    members[clusters.assignment[pos]].push_back(pos);
  }

  // Prefer lemma diversity across the selection: maximum bipartite matching
  // between clusters and the lemmas they contain, so as many clusters as
  // possible contribute a lemma no other selected pair uses.
  std::vector<std::string> lemmas;
  std::map<std::string, int> lemma_index;
  for (const CandidatePair& pair : pool) {
    if (lemma_index.emplace(pair.lemma, static_cast<int>(lemmas.size())).second) {
      lemmas.push_back(pair.lemma);
    }
  }
  std::vector<std::vector<int>> options(k);
  for (int c = 0; c < k; ++c) {
    std::set<int> seen;
    for (std::size_t pos : members[c]) {
      seen.insert(lemma_index[pool[pos].lemma]);
    }
    options[c].assign(seen.begin(), seen.end());
  }
  std::vector<int> lemma_owner(lemmas.size(), -1);
  for (int c = 0; c < k; ++c) {
    std::vector<char> visited(lemmas.size(), 0);
    try_assign(c, options, visited, lemma_owner);
  }
  std::vector<int> cluster_lemma(k, -1);
  for (std::size_t l = 0; l < lemma_owner.size(); ++l) {
    if (lemma_owner[l] >= 0) cluster_lemma[lemma_owner[l]] = static_cast<int>(l);
  }

  std::vector<std::size_t> picked;
  picked.reserve(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    std::size_t choice = members[c].front();
    if (cluster_lemma[c] >= 0) {
      for (std::size_t pos : members[c]) {
        if (lemma_index[pool[pos].lemma] == cluster_lemma[c]) {
          choice = pos;
          break;
        }
      }
    }
    picked.push_back(choice);
  }
  std::sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) {
    return pool[a].id < pool[b].id;
  });
  outcome.selected.reserve(picked.size());
  for (std::size_t pos : picked) outcome.selected.push_back(pool[pos]);
  return outcome;
}

MinedNegative mine_silver_negative(const CandidatePair& target,
                                   const std::vector<CandidatePair>& pool,
                                   const std::set<std::string>& annotated_ids,
                                   SimilarityProvider& provider) {
  // Candidates in id order so that equal scores resolve to the smallest id
  // no matter how the pool file is ordered.
  std::vector<const CandidatePair*> candidates;
  for (const CandidatePair& pair : pool) {
    if (pair.id == target.id) continue;
    if (annotated_ids.count(pair.id)) continue;
    if (pair.source_ref == target.source_ref) continue;
    candidates.push_back(&pair);
  }
  if (candidates.empty()) {
    throw DomainError("no candidate sources remain for \"" + target.id + "\"");
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const CandidatePair* a, const CandidatePair* b) {
              return a->id < b->id;
            });

  const CandidatePair* best = nullptr;
  double best_score = -1.0;
  for (const CandidatePair* candidate : candidates) {
    const double score =
        provider.similarity(target.report_ref, candidate->source_ref);
    if (score > best_score) {
      best_score = score;
      best = candidate;
    }
  }
  MinedNegative out;
  out.report_ref = target.report_ref;
  out.source_ref = best->source_ref;
  out.candidate_id = best->id;
  out.score = best_score;
  return out;
}

std::string first_sentences(const std::string& text, int max_sentences) {
  if (max_sentences < 1) throw DomainError("sentence count must be >= 1");
  int seen = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    const bool at_end = i + 1 == text.size();
    const char next = at_end ? ' ' : text[i + 1];
    if (at_end || next == ' ' || next == '\t' || next == '\n' || next == '\r') {
      if (++seen == max_sentences) return text.substr(0, i + 1);
    }
  }
  return text;
}

}  // namespace crossdoc
