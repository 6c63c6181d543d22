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
#include <optional>
#include <string>
#include <vector>

#include "crossdoc/model.hpp"
#include "crossdoc/simtext.hpp"

// Task metrics. Source validation is plain binary classification. Argument
// extraction uses role-constrained mention-to-entity alignment in an exact
// (offset/surface equality) and a soft (normalized edit similarity) variant,
// micro-aggregated corpus-wide. Annotator agreement is a similarity-weighted
// F1 over optimally paired mentions.

namespace crossdoc {

enum class MatchMode { kExact, kSoft };
enum class RefsMode { kMention, kCluster };

const char* to_string(MatchMode mode);
const char* to_string(RefsMode refs);
MatchMode match_mode_from_string(std::string_view s);
RefsMode refs_mode_from_string(std::string_view s);

// Micro precision/recall/F1 with the raw sums kept around. When a
// denominator is zero the ratio is 1.0 if the other side of the comparison
// is empty too (nothing to find, nothing predicted) and 0.0 otherwise.
struct PRF {
  double precision_numerator = 0.0;
  double precision_denominator = 0.0;
  double recall_numerator = 0.0;
  double recall_denominator = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

PRF finalize_prf(double precision_numerator, double precision_denominator,
                 double recall_numerator, double recall_denominator);

struct SVResult {
  std::size_t examples = 0;
  double accuracy = 0.0;
  PRF positive;  // precision/recall/F1 of the positive (valid-source) class
};

// Scores binary source-validation predictions against gold labels. The
// prediction map must cover the gold ids exactly; missing or unknown ids are
// a DomainError listing them.
SVResult score_sv(const std::vector<SVExample>& gold,
                  const std::map<std::string, bool>& predictions);

// One predicted mention's best reference entity (index into the refs list
// passed to align_role; unset when nothing scored above 0) and that score.
struct MentionAlignment {
  TokenSpan predicted;
  std::optional<std::size_t> entity;
  double similarity = 0.0;
};

struct RoleAlignment {
  double precision_numerator = 0.0;
  double recall_numerator = 0.0;
  std::vector<MentionAlignment> mentions;  // one entry per predicted mention
};

// Aligns same-role predicted mentions against reference entities.
// s(p, C) is 1 in exact mode iff p's offsets equal some mention of C
// (surface-token equality instead when p is foreign), and the best
// normalized edit similarity to C's mentions in soft mode. Predictions and
// entities may be matched many-to-one:
//   precision_numerator = sum over p of max_C s(p, C)
//   recall_numerator    = sum over C of min(1, max_p s(p, C))
// Prediction surfaces must already be populated (and case-folded if wanted).
RoleAlignment align_role(const std::vector<TokenSpan>& predictions,
                         const std::vector<ArgumentEntity>& references,
                         MatchMode mode, const EditCosts& costs = {});

struct CeafRmeOptions {
  DocSide side = DocSide::kSource;
  MatchMode mode = MatchMode::kExact;
  RefsMode refs = RefsMode::kMention;
  bool case_fold = false;
  EditCosts costs;
  // Worker threads for per-example scoring. Results are bitwise identical
  // for any value: rows, warnings, and sums are merged in example-id order.
  int jobs = 1;
};

// Within-example sums, exposed for per-example breakdowns and length-bin
// analysis; the ratios use the same zero-denominator convention per example.
struct ExampleScore {
  std::string example_id;
  double precision_numerator = 0.0;
  double precision_denominator = 0.0;
  double recall_numerator = 0.0;
  double recall_denominator = 0.0;
};

struct CeafRmeResult {
  PRF prf;
  std::size_t examples = 0;
  std::vector<ExampleScore> per_example;   // in example-id order
  std::vector<std::string> warnings;       // e.g. predicted role not in frame
};

// Corpus-level argument-extraction score for one document side. Examples
// with no prediction set on that side count as predicting nothing. A
// prediction for an unknown example id is a DomainError; a predicted role
// outside the example's frame role set counts as an unmatched predicted
// mention and produces a warning. In mention mode each reference entity is
// collapsed to its first-listed (annotated) mention; in cluster mode all
// mentions are eligible. P, R, and F1 are micro-aggregated: numerators and
// denominators are summed over every example and role, then divided.
CeafRmeResult score_ceaf_rme(const std::vector<CDAEExample>& gold,
                             const std::vector<PredictionSet>& predictions,
                             const FrameOntology& ontology,
                             const CeafRmeOptions& options);

struct AgreementCounts {
  double tp = 0.0;
  double fp = 0.0;
  double fn = 0.0;
};

// One pairing decision. A paired pred/ref mention pair with similarity a
// contributes tp = a, fp = fn = (1-a)/2, so tp + fp + fn is exactly 1; an
// unpaired predicted mention is a unit fp, an unpaired reference mention a
// unit fn.
struct AgreementPair {
  enum class Kind { kPaired, kUnpairedPredicted, kUnpairedReference };
  std::string role;
  Kind kind = Kind::kPaired;
  double similarity = 0.0;
  double tp = 0.0;
  double fp = 0.0;
  double fn = 0.0;
};

struct AgreementResult {
  AgreementCounts counts;
  PRF prf;
  std::vector<AgreementPair> pairs;
};

// Similarity-weighted agreement between two annotations of the same example
// (role -> mention spans, surfaces populated). Within each role, mentions
// are paired one-to-one so that the total similarity is maximal — by
// exhaustive search when both sides have at most six mentions, otherwise by
// optimal assignment. Identical annotations score F1 = 1.
AgreementResult score_agreement(
    const std::map<std::string, std::vector<TokenSpan>>& reference,
    const std::map<std::string, std::vector<TokenSpan>>& predicted,
    const EditCosts& costs = {});

enum class PairingMethod { kAuto, kExhaustive, kAssignment };

// Maximum-total-similarity complete pairing of rows onto distinct columns
// (requires rows <= columns); returns the column chosen for each row.
// Exposed so tests can cross-check the exhaustive and assignment solvers.
std::vector<int> best_pairing(const std::vector<std::vector<double>>& sim,
                              PairingMethod method = PairingMethod::kAuto);

// Ids whose score is at or below the nearest-rank 25th percentile, ordered
// by (score, id). Throws DomainError on an empty map.
std::vector<std::string> bottom_quartile(
    const std::map<std::string, double>& scores);

}  // namespace crossdoc
