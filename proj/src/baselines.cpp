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

#include "crossdoc/baselines.hpp"

namespace crossdoc {

std::map<std::string, bool> majority_baseline(
    const std::map<std::string, bool>& train_labels,
    const std::vector<std::string>& eval_ids) {
  if (train_labels.empty()) throw DomainError("no training labels given");
  std::size_t positive = 0;
  for (const auto& [id, label] : train_labels) {
    (void)id;
    if (label) ++positive;
  }
  const bool majority = 2 * positive >= train_labels.size();
  std::map<std::string, bool> out;
  for (const std::string& id : eval_ids) out[id] = majority;
  return out;
}

bool lemma_baseline(const SVExample& example, const LemmaTable* table) {
  if (example.trigger.span.surface.empty()) {
    throw DomainError("example " + example.id +
                      ": trigger span carries no tokens");
  }
  const std::string head = lemmatize(example.trigger.span.surface.back(), table);
  for (const std::string& token : example.source.tokens) {
    if (lemmatize(token, table) == head) return true;
  }
  return false;
}

PredictionSet report_baseline(const CDAEExample& example, RefsMode refs) {
  PredictionSet out;
  out.example_id = example.id;
  out.side = DocSide::kSource;
  for (const auto& [role, entities] : example.report_refs) {
    std::vector<TokenSpan> spans;
    for (const ArgumentEntity& entity : entities) {
      const std::size_t take =
          refs == RefsMode::kMention ? 1 : entity.mentions.size();
      for (std::size_t m = 0; m < take && m < entity.mentions.size(); ++m) {
        TokenSpan span = entity.mentions[m];
        span.foreign = true;  // offsets are report-relative
        spans.push_back(std::move(span));
      }
    }
    if (!spans.empty()) out.args.emplace(role, std::move(spans));
  }
  return out;
}

PredictionSet ensemble_rb(const PredictionSet& model, const PredictionSet& rb) {
  if (model.example_id != rb.example_id) {
    throw DomainError("ensemble example ids differ: \"" + model.example_id +
                      "\" vs \"" + rb.example_id + "\"");
  }
  if (model.side != rb.side) {
    throw DomainError("ensemble sides differ for example \"" +
                      model.example_id + "\"");
  }
  PredictionSet out = model;
  for (const auto& [role, spans] : rb.args) {
    auto it = out.args.find(role);
    if (it == out.args.end() || it->second.empty()) {
      out.args[role] = spans;
    }
  }
  return out;
}

}  // namespace crossdoc
