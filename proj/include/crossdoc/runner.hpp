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
#include <optional>
#include <string>
#include <vector>

#include "crossdoc/model.hpp"
#include "crossdoc/scoring.hpp"

// One function per command. Each loads its inputs, gates corpora through
// validation, runs the appropriate module, and renders every output channel
// as a string: the structured JSON document, optional record lines, an
// optional tab-separated table, an optional chart, and a one-paragraph
// human summary. Callers (the C API, and the command-line tool through it)
// decide where each channel goes. Commands with a seed are byte-stable:
// identical inputs and seed give identical channel contents.

namespace crossdoc {

struct CommandResult {
  std::string document_json;              // always present
  std::optional<std::string> records;     // newline-delimited record lines
  std::optional<std::string> table;       // tab-separated, header first
  std::optional<std::string> chart_svg;
  std::string summary;                    // human text for standard output
  std::vector<std::string> warnings;      // non-fatal, for standard error
  int exit_code = 0;                      // validate: 1 when violations exist
};

struct ValidateArgs {
  std::string task;  // "sv" | "cdae"
  std::string corpus;
  std::string ontology;
};
CommandResult run_validate(const ValidateArgs& args);

struct ScoreSvArgs {
  std::string gold;
  std::string ontology;
  std::string predictions;  // label records
};
CommandResult run_score_sv(const ScoreSvArgs& args);

struct ScoreCdaeArgs {
  std::string gold;
  std::string ontology;
  std::string predictions;  // prediction records
  DocSide side = DocSide::kSource;
  std::string match = "exact";  // "exact" | "soft" | "both"
  RefsMode refs = RefsMode::kMention;
  bool ensemble_report_baseline = false;  // source side only
  bool case_fold = false;
  bool per_example = false;
  int jobs = 1;
};
CommandResult run_score_cdae(const ScoreCdaeArgs& args);

struct AgreementArgs {
  std::string gold;  // corpus supplying documents and frames
  std::string ontology;
  std::string annotator_a;  // prediction records (reference)
  std::string annotator_b;  // prediction records (predicted)
  bool bottom_quartile = false;
  bool case_fold = false;
};
CommandResult run_agreement(const AgreementArgs& args);

struct BaselineArgs {
  std::string kind;  // "majority" | "lemma" | "report"
  std::string corpus;
  std::string ontology;
  std::string train_labels;  // majority only
  std::string lemma_table;   // lemma only; falls back to CROSSDOC_LEMMA_TABLE
  RefsMode refs = RefsMode::kMention;  // report only
};
CommandResult run_baseline(const BaselineArgs& args);

struct PlanArgs {
  std::string stats;  // frame stats records
};
CommandResult run_plan(const PlanArgs& args);

struct SampleArgs {
  std::string pool;
  std::string plan;  // plan document or bare {frame: count} object
  long target = 0;   // uniform per-frame target; 0 means use the plan file
  std::uint64_t seed = 0;
  std::string embedding_cache;  // for pool entries without vectors
  std::string provider_url;     // falls back to CROSSDOC_PROVIDER_URL
};
CommandResult run_sample(const SampleArgs& args);

struct MineArgs {
  std::string pool;
  std::string annotated;  // id list file, optional
  std::string targets;    // id list file, optional; default all eligible
  long count = 0;         // >0: seeded subsample of eligible targets
  std::uint64_t seed = 0;
  std::string similarity_cache;
  std::string provider_url;  // falls back to CROSSDOC_PROVIDER_URL
};
CommandResult run_mine_negatives(const MineArgs& args);

struct BinsArgs {
  std::string metric;  // "sv-f1" | "ceaf-rme-a-f1"
  std::string gold;
  std::string ontology;
  std::string predictions;
  DocSide side = DocSide::kSource;
  RefsMode refs = RefsMode::kMention;
  bool case_fold = false;
};
CommandResult run_bins(const BinsArgs& args);

}  // namespace crossdoc
