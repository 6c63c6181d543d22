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
#include <string>
#include <vector>

#include "crossdoc/model.hpp"
#include "crossdoc/scoring.hpp"
#include "crossdoc/simtext.hpp"

// Deterministic baselines that run without any learned model, plus the rule
// for backing a model off to the report arguments.

namespace crossdoc {

// Predicts the majority training label for every eval id; a tie goes to
// positive. Throws DomainError when train_labels is empty.
std::map<std::string, bool> majority_baseline(
    const std::map<std::string, bool>& train_labels,
    const std::vector<std::string>& eval_ids);

// True iff the lemma of the trigger head token (the trigger's last token)
// occurs among the lemmatized source tokens. Throws DomainError when the
// trigger span carries no tokens.
bool lemma_baseline(const SVExample& example, const LemmaTable* table = nullptr);

// Copies the report's gold argument mentions to the source side: one
// prediction per entity's first-listed mention (refs=mention) or per mention
// (refs=cluster). The emitted spans keep their report offsets but are marked
// foreign and carry their surface tokens, so exact scoring compares surfaces.
PredictionSet report_baseline(const CDAEExample& example, RefsMode refs);

// Fills every role the model predicted nothing for with the report-baseline
// predictions for that role; roles with at least one model prediction pass
// through untouched. Throws DomainError when example ids or sides differ.
PredictionSet ensemble_rb(const PredictionSet& model, const PredictionSet& rb);

}  // namespace crossdoc
