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

#include "crossdoc/runner.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <set>

#include "crossdoc/analysis.hpp"
#include "crossdoc/baselines.hpp"
#include "crossdoc/curation.hpp"
#include "crossdoc/provider.hpp"
#include "crossdoc/records.hpp"
#include "json.hpp"

namespace crossdoc {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::size_t kCandidateCap = 250;  // per-frame candidate-set size

std::string fixed4(double value) { return format_fixed(value, 4); }

std::string dump_document(const ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

std::string tsv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

ordered_json prf_json(const PRF& prf) {
  ordered_json out;
  out["precision"] = prf.precision;
  out["recall"] = prf.recall;
  out["f1"] = prf.f1;
  out["precision_numerator"] = prf.precision_numerator;
  out["precision_denominator"] = prf.precision_denominator;
  out["recall_numerator"] = prf.recall_numerator;
  out["recall_denominator"] = prf.recall_denominator;
  return out;
}

std::string env_or(const std::string& value, const char* variable) {
  if (!value.empty()) return value;
  const char* env = std::getenv(variable);
  return env == nullptr ? std::string() : std::string(env);
}

// "host:port", with an optional http:// prefix.
std::pair<std::string, int> parse_provider_url(const std::string& url) {
  std::string rest = url;
  const std::string prefix = "http://";
  if (rest.rfind(prefix, 0) == 0) rest = rest.substr(prefix.size());
  while (!rest.empty() && rest.back() == '/') rest.pop_back();
  const std::size_t colon = rest.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == rest.size()) {
    throw SchemaError("provider url must look like host:port, got \"" + url +
                      "\"");
  }
  int port = 0;
  try {
    port = std::stoi(rest.substr(colon + 1));
  } catch (const std::exception&) {
    throw SchemaError("invalid provider port in \"" + url + "\"");
  }
  return {rest.substr(0, colon), port};
}

// nullptr when nothing is configured; callers decide whether that is fatal.
std::unique_ptr<SimilarityProvider> make_provider(
    const std::string& similarity_cache, const std::string& embedding_cache,
    const std::string& provider_url) {
  const std::string url = env_or(provider_url, "CROSSDOC_PROVIDER_URL");
  if (!url.empty()) {
    auto [host, port] = parse_provider_url(url);
    return std::make_unique<HttpProvider>(host, port);
  }
  if (!similarity_cache.empty() || !embedding_cache.empty()) {
    return std::make_unique<FileProvider>(similarity_cache, embedding_cache);
  }
  return nullptr;
}

FrameOntology load_ontology_file(const std::string& path) {
  if (path.empty()) throw SchemaError("an ontology file is required");
  return load_ontology(path);
}

// A corpus entering any scoring or prediction path must be clean and valid.
template <typename Example>
std::vector<Example> gate(Corpus<Example> corpus, const std::string& path,
                          const FrameOntology& ontology) {
  require_clean(corpus, path);
  ValidationReport report = validate_corpus(corpus.examples, ontology);
  if (!report.ok()) {
    const Violation& first = report.violations.front();
    throw DomainError(path + ": corpus failed validation with " +
                      std::to_string(report.violations.size()) +
                      " violation(s); first: [" + first.example_id + "] " +
                      first.path + ": " + first.message);
  }
  return std::move(corpus.examples);
}

std::vector<SVExample> load_sv_gated(const std::string& path,
                                     const FrameOntology& ontology) {
  return gate(load_sv_corpus(path), path, ontology);
}

std::vector<CDAEExample> load_cdae_gated(const std::string& path,
                                         const FrameOntology& ontology) {
  return gate(load_cdae_corpus(path), path, ontology);
}

}  // namespace

CommandResult run_validate(const ValidateArgs& args) {
  const FrameOntology ontology = load_ontology_file(args.ontology);
  ordered_json doc;
  doc["command"] = "validate";
  doc["task"] = args.task;

  std::size_t parsed = 0;
  std::vector<Violation> violations;
  auto add_record_errors = [&](const std::vector<RecordError>& errors) {
    for (const RecordError& err : errors) {
      violations.push_back(Violation{
          err.id, "record:" + std::to_string(err.line), err.message});
    }
  };
  if (args.task == "sv") {
    SVCorpus corpus = load_sv_corpus(args.corpus);
    add_record_errors(corpus.errors);
    ValidationReport report = validate_corpus(corpus.examples, ontology);
    violations.insert(violations.end(), report.violations.begin(),
                      report.violations.end());
    parsed = corpus.examples.size();
  } else if (args.task == "cdae") {
    CDAECorpus corpus = load_cdae_corpus(args.corpus);
    add_record_errors(corpus.errors);
    ValidationReport report = validate_corpus(corpus.examples, ontology);
    violations.insert(violations.end(), report.violations.begin(),
                      report.violations.end());
    parsed = corpus.examples.size();
  } else {
    throw SchemaError("unknown task \"" + args.task + "\" (expected sv or cdae)");
  }

  doc["records"] = parsed;
  doc["ok"] = violations.empty();
  ordered_json list = ordered_json::array();
  for (const Violation& v : violations) {
    ordered_json item;
    item["id"] = v.example_id;
    item["path"] = v.path;
    item["message"] = v.message;
    list.push_back(std::move(item));
  }
  doc["violations"] = std::move(list);

  CommandResult result;
  result.document_json = dump_document(doc);
  result.exit_code = violations.empty() ? 0 : 1;
  std::string summary = args.corpus + ": " + std::to_string(parsed) +
                        " record(s), " + std::to_string(violations.size()) +
                        " violation(s)";
  for (std::size_t i = 0; i < violations.size() && i < 10; ++i) {
    summary += "\n  [" + violations[i].example_id + "] " + violations[i].path +
               ": " + violations[i].message;
  }
  if (violations.size() > 10) {
    summary += "\n  ... and " + std::to_string(violations.size() - 10) + " more";
  }
  result.summary = summary;
  return result;
}

CommandResult run_score_sv(const ScoreSvArgs& args) {
  const FrameOntology ontology = load_ontology_file(args.ontology);
  const std::vector<SVExample> gold = load_sv_gated(args.gold, ontology);
  const std::map<std::string, bool> predictions = load_labels(args.predictions);
  const SVResult scored = score_sv(gold, predictions);

  ordered_json doc;
  doc["command"] = "score_sv";
  doc["examples"] = scored.examples;
  doc["accuracy"] = scored.accuracy;
  doc["positive"] = prf_json(scored.positive);

  CommandResult result;
  result.document_json = dump_document(doc);
  result.table = tsv({{"accuracy", "precision", "recall", "f1"},
                      {fixed4(scored.accuracy), fixed4(scored.positive.precision),
                       fixed4(scored.positive.recall),
                       fixed4(scored.positive.f1)}});
  result.summary = "scored " + std::to_string(scored.examples) +
                   " example(s): accuracy " + fixed4(scored.accuracy) +
                   ", positive class P " + fixed4(scored.positive.precision) +
                   " R " + fixed4(scored.positive.recall) + " F1 " +
                   fixed4(scored.positive.f1);
  return result;
}

CommandResult run_score_cdae(const ScoreCdaeArgs& args) {
  const FrameOntology ontology = load_ontology_file(args.ontology);
  const std::vector<CDAEExample> gold = load_cdae_gated(args.gold, ontology);
  std::vector<PredictionSet> predictions = load_predictions(args.predictions);

  if (args.ensemble_report_baseline) {
    if (args.side != DocSide::kSource) {
      throw DomainError(
          "the report-baseline ensemble applies to the source side only");
    }
    std::map<std::string, const PredictionSet*> by_id;
    for (const PredictionSet& preds : predictions) {
      if (preds.side == DocSide::kSource) by_id.emplace(preds.example_id, &preds);
    }
    std::vector<PredictionSet> ensembled;
    ensembled.reserve(gold.size());
    for (const CDAEExample& example : gold) {
      PredictionSet model;
      model.example_id = example.id;
      model.side = DocSide::kSource;
      auto it = by_id.find(example.id);
      if (it != by_id.end()) model = *it->second;
      ensembled.push_back(
          ensemble_rb(model, report_baseline(example, args.refs)));
    }
    predictions = std::move(ensembled);
  }

  std::vector<MatchMode> modes;
  if (args.match == "both") {
    modes = {MatchMode::kExact, MatchMode::kSoft};
  } else {
    modes = {match_mode_from_string(args.match)};
  }

  ordered_json doc;
  doc["command"] = "score_cdae";
  doc["side"] = to_string(args.side);
  doc["refs"] = to_string(args.refs);
  doc["case_fold"] = args.case_fold;
  doc["ensemble_report_baseline"] = args.ensemble_report_baseline;

  CommandResult result;
  std::vector<std::vector<std::string>> rows = {
      {"mode", "precision", "recall", "f1"}};
  ordered_json scores = ordered_json::object();
  ordered_json per_example = ordered_json::object();
  std::string summary = "CEAF-RME (side " + std::string(to_string(args.side)) +
                        ", refs " + to_string(args.refs) + ")";
  for (std::size_t m = 0; m < modes.size(); ++m) {
    CeafRmeOptions options;
    options.side = args.side;
    options.mode = modes[m];
    options.refs = args.refs;
    options.case_fold = args.case_fold;
    options.jobs = args.jobs;
    const CeafRmeResult scored =
        score_ceaf_rme(gold, predictions, ontology, options);
    const char* mode_name = to_string(modes[m]);
    scores[mode_name] = prf_json(scored.prf);
    scores[mode_name]["examples"] = scored.examples;
    if (m == 0) result.warnings = scored.warnings;
    if (args.per_example) {
      ordered_json list = ordered_json::array();
      for (const ExampleScore& row : scored.per_example) {
        const PRF prf = finalize_prf(
            row.precision_numerator, row.precision_denominator,
            row.recall_numerator, row.recall_denominator);
        ordered_json item;
        item["id"] = row.example_id;
        item["precision"] = prf.precision;
        item["recall"] = prf.recall;
        item["f1"] = prf.f1;
        item["precision_numerator"] = row.precision_numerator;
        item["precision_denominator"] = row.precision_denominator;
        item["recall_numerator"] = row.recall_numerator;
        item["recall_denominator"] = row.recall_denominator;
        list.push_back(std::move(item));
      }
      per_example[mode_name] = std::move(list);
    }
    rows.push_back({mode_name, fixed4(scored.prf.precision),
                    fixed4(scored.prf.recall), fixed4(scored.prf.f1)});
    summary += std::string("; ") + mode_name + " F1 " + fixed4(scored.prf.f1);
  }
  doc["scores"] = std::move(scores);
  if (args.per_example) doc["per_example"] = std::move(per_example);
  ordered_json warning_list = ordered_json::array();
  for (const std::string& w : result.warnings) warning_list.push_back(w);
  doc["warnings"] = std::move(warning_list);

  result.document_json = dump_document(doc);
  result.table = tsv(rows);
  result.summary = summary;
  return result;
}

namespace {

// Spans of one annotation file entry, resolved to scoreable surfaces against
// the gold document for the side.
std::map<std::string, std::vector<TokenSpan>> resolve_annotation(
    const CDAEExample& example, DocSide side,
    const std::map<std::string, std::vector<TokenSpan>>& args,
    const FrameOntology& ontology, bool case_fold) {
  const std::vector<std::string>* roles = ontology.roles(example.trigger.frame);
  std::map<std::string, std::vector<TokenSpan>> out;
  for (const auto& [role, spans] : args) {
    const bool known =
        roles != nullptr &&
        std::find(roles->begin(), roles->end(), role) != roles->end();
    if (!known) {
      throw DomainError("example " + example.id + ": role \"" + role +
                        "\" is not a role of frame \"" + example.trigger.frame +
                        "\"");
    }
    std::vector<TokenSpan> resolved;
    for (const TokenSpan& span : spans) {
      TokenSpan r = span;
      if (r.foreign) {
        if (r.surface.empty()) {
          throw DomainError("example " + example.id + " role " + role +
                            ": foreign span carries no surface tokens");
        }
      } else {
        r.surface = span_surface(example.doc(side), r.start, r.end,
                                 "example " + example.id + " role " + role);
      }
      if (case_fold) r.surface = fold_tokens(r.surface);
      resolved.push_back(std::move(r));
    }
    if (!resolved.empty()) out.emplace(role, std::move(resolved));
  }
  return out;
}

}  // namespace

CommandResult run_agreement(const AgreementArgs& args) {
  const FrameOntology ontology = load_ontology_file(args.ontology);
  const std::vector<CDAEExample> gold = load_cdae_gated(args.gold, ontology);
  std::map<std::string, const CDAEExample*> gold_by_id;
  for (const CDAEExample& example : gold) gold_by_id.emplace(example.id, &example);

  // annotator file -> id -> side -> args
  using SideArgs = std::map<DocSide, const PredictionSet*>;
  auto index = [&](const std::string& path) {
    std::map<std::string, SideArgs> out;
    auto loaded = std::make_shared<std::vector<PredictionSet>>(
        load_predictions(path));
    for (const PredictionSet& preds : *loaded) {
      if (!gold_by_id.count(preds.example_id)) {
        throw DomainError(path + ": annotation for unknown example id \"" +
                          preds.example_id + "\"");
      }
      out[preds.example_id][preds.side] = &preds;
    }
    return std::make_pair(loaded, out);
  };
  auto [a_hold, a_index] = index(args.annotator_a);
  auto [b_hold, b_index] = index(args.annotator_b);

  AgreementCounts total;
  std::map<std::string, double> example_f1;
  ordered_json per_example = ordered_json::array();
  std::vector<std::vector<std::string>> rows = {
      {"id", "tp", "fp", "fn", "precision", "recall", "f1"}};
  static const std::map<std::string, std::vector<TokenSpan>> kEmpty;
  for (const auto& [id, example] : gold_by_id) {
    auto a_it = a_index.find(id);
    auto b_it = b_index.find(id);
    if (a_it == a_index.end() && b_it == b_index.end()) continue;

    AgreementCounts counts;
    for (DocSide side : {DocSide::kReport, DocSide::kSource}) {
      const PredictionSet* a_preds = nullptr;
      const PredictionSet* b_preds = nullptr;
      if (a_it != a_index.end()) {
        auto s = a_it->second.find(side);
        if (s != a_it->second.end()) a_preds = s->second;
      }
      if (b_it != b_index.end()) {
        auto s = b_it->second.find(side);
        if (s != b_it->second.end()) b_preds = s->second;
      }
      if (a_preds == nullptr && b_preds == nullptr) continue;
      const auto reference = resolve_annotation(
          *example, side, a_preds ? a_preds->args : kEmpty, ontology,
          args.case_fold);
      const auto predicted = resolve_annotation(
          *example, side, b_preds ? b_preds->args : kEmpty, ontology,
          args.case_fold);
      const AgreementResult scored = score_agreement(reference, predicted);
      counts.tp += scored.counts.tp;
      counts.fp += scored.counts.fp;
      counts.fn += scored.counts.fn;
    }
    total.tp += counts.tp;
    total.fp += counts.fp;
    total.fn += counts.fn;
    const PRF prf = finalize_prf(counts.tp, counts.tp + counts.fp, counts.tp,
                                 counts.tp + counts.fn);
    example_f1[id] = prf.f1;
    ordered_json item;
    item["id"] = id;
    item["tp"] = counts.tp;
    item["fp"] = counts.fp;
    item["fn"] = counts.fn;
    item["precision"] = prf.precision;
    item["recall"] = prf.recall;
    item["f1"] = prf.f1;
    per_example.push_back(std::move(item));
    rows.push_back({id, fixed4(counts.tp), fixed4(counts.fp), fixed4(counts.fn),
                    fixed4(prf.precision), fixed4(prf.recall), fixed4(prf.f1)});
  }
  if (example_f1.empty()) {
    throw DomainError("no example is annotated in either file");
  }

  const PRF prf = finalize_prf(total.tp, total.tp + total.fp, total.tp,
                               total.tp + total.fn);
  ordered_json doc;
  doc["command"] = "agreement";
  doc["examples"] = example_f1.size();
  doc["tp"] = total.tp;
  doc["fp"] = total.fp;
  doc["fn"] = total.fn;
  doc["precision"] = prf.precision;
  doc["recall"] = prf.recall;
  doc["f1"] = prf.f1;
  doc["per_example"] = std::move(per_example);

  CommandResult result;
  result.summary = "agreement over " + std::to_string(example_f1.size()) +
                   " example(s): P " + fixed4(prf.precision) + " R " +
                   fixed4(prf.recall) + " F1 " + fixed4(prf.f1);
  if (args.bottom_quartile) {
    const std::vector<std::string> flagged = bottom_quartile(example_f1);
    ordered_json list = ordered_json::array();
    for (const std::string& id : flagged) list.push_back(id);
    doc["bottom_quartile"] = std::move(list);
    result.summary += "; bottom quartile: " + std::to_string(flagged.size()) +
                      " of " + std::to_string(example_f1.size()) + " example(s)";
  }
  result.document_json = dump_document(doc);
  result.table = tsv(rows);
  return result;
}

CommandResult run_baseline(const BaselineArgs& args) {
  const FrameOntology ontology = load_ontology_file(args.ontology);
  ordered_json doc;
  doc["command"] = "baseline";
  doc["baseline"] = args.kind;
  CommandResult result;

  if (args.kind == "majority") {
    if (args.train_labels.empty()) {
      throw SchemaError("the majority baseline needs --train-labels");
    }
    const std::vector<SVExample> gold = load_sv_gated(args.corpus, ontology);
    const std::map<std::string, bool> train = load_labels(args.train_labels);
    std::vector<std::string> ids;
    ids.reserve(gold.size());
    for (const SVExample& example : gold) ids.push_back(example.id);
    std::sort(ids.begin(), ids.end());
    const std::map<std::string, bool> predictions = majority_baseline(train, ids);

    std::size_t train_positive = 0;
    for (const auto& [id, label] : train) {
      (void)id;
      if (label) ++train_positive;
    }
    const bool majority = 2 * train_positive >= train.size();
    std::vector<std::string> lines;
    lines.reserve(ids.size());
    for (const std::string& id : ids) {
      lines.push_back(label_record(id, predictions.at(id)));
    }
    doc["train_positive"] = train_positive;
    doc["train_negative"] = train.size() - train_positive;
    doc["majority_label"] = majority ? "positive" : "negative";
    doc["examples"] = ids.size();
    result.records = join_lines(lines);
    result.summary = "majority baseline predicts \"" +
                     std::string(majority ? "positive" : "negative") +
                     "\" for " + std::to_string(ids.size()) + " example(s)";
  } else if (args.kind == "lemma") {
    const std::vector<SVExample> gold = load_sv_gated(args.corpus, ontology);
    const std::string table_path = env_or(args.lemma_table, "CROSSDOC_LEMMA_TABLE");
    std::optional<LemmaTable> table;
    if (!table_path.empty()) table = LemmaTable::from_file(table_path);

    std::map<std::string, bool> predictions;
    for (const SVExample& example : gold) {
      predictions[example.id] =
          lemma_baseline(example, table ? &*table : nullptr);
    }
    std::size_t positive = 0;
    std::vector<std::string> lines;
    lines.reserve(predictions.size());
    for (const auto& [id, label] : predictions) {
      lines.push_back(label_record(id, label));
      if (label) ++positive;
    }
    doc["examples"] = predictions.size();
    doc["positive"] = positive;
    doc["negative"] = predictions.size() - positive;
    doc["lemma_table"] = !table_path.empty();
    result.records = join_lines(lines);
    result.summary = "lemma baseline: " + std::to_string(positive) + " of " +
                     std::to_string(predictions.size()) +
                     " example(s) predicted positive";
  } else if (args.kind == "report") {
    const std::vector<CDAEExample> gold = load_cdae_gated(args.corpus, ontology);
    std::map<std::string, PredictionSet> by_id;
    std::size_t mentions = 0;
    for (const CDAEExample& example : gold) {
      PredictionSet preds = report_baseline(example, args.refs);
      mentions += preds.mention_count();
      by_id.emplace(example.id, std::move(preds));
    }
    std::vector<std::string> lines;
    lines.reserve(by_id.size());
    for (const auto& [id, preds] : by_id) {
      (void)id;
      lines.push_back(prediction_record(preds));
    }
    doc["refs"] = to_string(args.refs);
    doc["examples"] = by_id.size();
    doc["mentions"] = mentions;
    result.records = join_lines(lines);
    result.summary = "report baseline: " + std::to_string(mentions) +
                     " source-side mention(s) over " +
                     std::to_string(by_id.size()) + " example(s)";
  } else {
    throw SchemaError("unknown baseline \"" + args.kind +
                      "\" (expected majority, lemma, or report)");
  }
  result.document_json = dump_document(doc);
  return result;
}

CommandResult run_plan(const PlanArgs& args) {
  std::vector<FrameStats> stats = load_frame_stats(args.stats);
  if (stats.empty()) throw DomainError("no frame stats to plan from");
  std::sort(stats.begin(), stats.end(),
            [](const FrameStats& a, const FrameStats& b) {
              return a.frame < b.frame;
            });

  ordered_json frames = ordered_json::array();
  ordered_json counts = ordered_json::object();
  std::vector<std::vector<std::string>> rows = {
      {"frame", "precision", "support", "p_avg", "v", "planned"}};
  long total = 0;
  for (const FrameStats& row : stats) {
    const long planned = plan_sample_size(row);
    total += planned;
    ordered_json item;
    item["frame"] = row.frame;
    item["precision"] = row.precision;
    item["support"] = row.support;
    item["p_avg"] = row.p_avg;
    item["v"] = row.validator_accuracy;
    item["planned"] = planned;
    frames.push_back(std::move(item));
    counts[row.frame] = planned;
    rows.push_back({row.frame, fixed4(row.precision), std::to_string(row.support),
                    fixed4(row.p_avg), fixed4(row.validator_accuracy),
                    std::to_string(planned)});
  }
  ordered_json doc;
  doc["command"] = "plan";
  doc["frames"] = std::move(frames);
  doc["counts"] = std::move(counts);
  doc["total"] = total;

  CommandResult result;
  result.document_json = dump_document(doc);
  result.table = tsv(rows);
  result.summary = "planned " + std::to_string(stats.size()) +
                   " frame(s), total " + std::to_string(total) +
                   " annotation(s)";
  return result;
}

namespace {

std::map<std::string, long> load_plan_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  const json* counts = &doc;
  if (doc.is_object() && doc.contains("counts")) counts = &doc.at("counts");
  if (!counts->is_object()) {
    throw SchemaError(path + ": expected an object of frame -> count");
  }
  std::map<std::string, long> out;
  for (const auto& [frame, value] : counts->items()) {
    if (!value.is_number_integer() || value.get<long>() < 1) {
      throw SchemaError(path + ": count for frame \"" + frame +
                        "\" must be a positive integer");
    }
    out[frame] = value.get<long>();
  }
  return out;
}

}  // namespace

CommandResult run_sample(const SampleArgs& args) {
  std::vector<CandidatePair> pool = load_candidate_pool(args.pool);
  if (pool.empty()) throw DomainError("candidate pool is empty");
  if (args.target <= 0 && args.plan.empty()) {
    throw SchemaError("sampling needs either a per-frame plan or a target");
  }
  std::map<std::string, long> plan;
  if (args.target <= 0) plan = load_plan_counts(args.plan);

  // Pool entries without vectors are embedded from the first five sentences
  // of their source text.
  std::unique_ptr<SimilarityProvider> provider;
  bool provider_tried = false;
  for (CandidatePair& pair : pool) {
    if (pair.embedding) continue;
    if (!provider_tried) {
      provider = make_provider("", args.embedding_cache, args.provider_url);
      provider_tried = true;
    }
    if (provider == nullptr) {
      throw DomainError("candidate \"" + pair.id +
                        "\" has no embedding and no provider is configured");
    }
    if (!pair.source_text) {
      throw DomainError("candidate \"" + pair.id +
                        "\" has no embedding and no source_text to embed");
    }
    pair.embedding = provider->embed(first_sentences(*pair.source_text, 5));
  }

  std::map<std::string, std::vector<CandidatePair>> by_frame;
  std::map<std::string, std::size_t> frame_total;
  for (const CandidatePair& pair : pool) {
    ++frame_total[pair.frame];
    auto& list = by_frame[pair.frame];
    if (list.size() < kCandidateCap) list.push_back(pair);
  }

  CommandResult result;
  ordered_json frames = ordered_json::object();
  std::vector<CandidatePair> selected;
  for (const auto& [frame, list] : by_frame) {
    long target = args.target;
    if (target <= 0) {
      auto it = plan.find(frame);
      if (it == plan.end()) {
        throw DomainError("no planned count for frame \"" + frame + "\"");
      }
      target = it->second;
    }
    if (frame_total[frame] > kCandidateCap) {
      result.warnings.push_back(
          "frame " + frame + ": candidate set capped at " +
          std::to_string(kCandidateCap) + " of " +
          std::to_string(frame_total[frame]) + " pair(s), in file order");
    }
    const SampleOutcome outcome = stratified_sample(list, target, args.seed);
    if (outcome.truncated) {
      result.warnings.push_back(
          "frame " + frame + ": target " + std::to_string(target) +
          " exceeds the candidate set; selected all " +
          std::to_string(outcome.selected.size()) + " pair(s)");
    }
    ordered_json item;
    item["pool"] = frame_total[frame];
    item["capped"] = list.size();
    item["target"] = target;
    item["selected"] = outcome.selected.size();
    frames[frame] = std::move(item);
    selected.insert(selected.end(), outcome.selected.begin(),
                    outcome.selected.end());
  }
  std::sort(selected.begin(), selected.end(),
            [](const CandidatePair& a, const CandidatePair& b) {
              return a.id < b.id;
            });

  ordered_json doc;
  doc["command"] = "sample";
  doc["seed"] = args.seed;
  doc["frames"] = std::move(frames);
  ordered_json ids = ordered_json::array();
  std::vector<std::string> lines;
  lines.reserve(selected.size());
  for (const CandidatePair& pair : selected) {
    ids.push_back(pair.id);
    lines.push_back(candidate_record(pair));
  }
  doc["selected"] = std::move(ids);
  ordered_json warning_list = ordered_json::array();
  for (const std::string& w : result.warnings) warning_list.push_back(w);
  doc["warnings"] = std::move(warning_list);

  result.document_json = dump_document(doc);
  result.records = join_lines(lines);
  result.summary = "selected " + std::to_string(selected.size()) +
                   " pair(s) across " + std::to_string(by_frame.size()) +
                   " frame(s)";
  return result;
}

CommandResult run_mine_negatives(const MineArgs& args) {
  const std::vector<CandidatePair> pool = load_candidate_pool(args.pool);
  std::set<std::string> annotated;
  if (!args.annotated.empty()) annotated = load_id_set(args.annotated);
  std::map<std::string, const CandidatePair*> by_id;
  for (const CandidatePair& pair : pool) by_id.emplace(pair.id, &pair);

  std::vector<const CandidatePair*> targets;
  if (!args.targets.empty()) {
    for (const std::string& id : load_id_set(args.targets)) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        throw DomainError("target id \"" + id + "\" is not in the pool");
      }
      if (annotated.count(id)) {
        throw DomainError("target id \"" + id + "\" is already annotated");
      }
      targets.push_back(it->second);
    }
  } else {
    for (const auto& [id, pair] : by_id) {
      if (!annotated.count(id)) targets.push_back(pair);
    }
    if (args.count > 0 && args.count < static_cast<long>(targets.size())) {
      const std::vector<std::size_t> order =
          seeded_order(targets.size(), args.seed);
      std::vector<const CandidatePair*> chosen;
      chosen.reserve(static_cast<std::size_t>(args.count));
      for (long i = 0; i < args.count; ++i) chosen.push_back(targets[order[i]]);
      std::sort(chosen.begin(), chosen.end(),
                [](const CandidatePair* a, const CandidatePair* b) {
                  return a->id < b->id;
                });
      targets = std::move(chosen);
    }
  }
  if (targets.empty()) throw DomainError("no eligible mining targets");

  std::unique_ptr<SimilarityProvider> provider =
      make_provider(args.similarity_cache, "", args.provider_url);
  if (provider == nullptr) {
    throw ProviderError(
        "no similarity provider configured (pass a cache file or a provider "
        "url, or set CROSSDOC_PROVIDER_URL)");
  }

  // Diagnostic score histogram: pool pairs that carry their own
  // report-source similarity ("positive" column) against the mined
  // negatives' scores. Emitted for inspection, never asserted.
  std::array<std::size_t, 10> positive_hist{};
  std::array<std::size_t, 10> negative_hist{};
  auto hist_bin = [](double score) {
    int bin = static_cast<int>(score * 10.0);
    return static_cast<std::size_t>(std::clamp(bin, 0, 9));
  };
  for (const CandidatePair& pair : pool) {
    if (pair.similarity) ++positive_hist[hist_bin(*pair.similarity)];
  }

  ordered_json negatives = ordered_json::array();
  std::vector<std::string> lines;
  lines.reserve(targets.size());
  for (const CandidatePair* target : targets) {
    const MinedNegative mined =
        mine_silver_negative(*target, pool, annotated, *provider);
    ++negative_hist[hist_bin(mined.score)];
    ordered_json rec;
    rec["id"] = target->id;
    rec["report"] = mined.report_ref;
    rec["source"] = mined.source_ref;
    rec["candidate"] = mined.candidate_id;
    rec["score"] = mined.score;
    lines.push_back(rec.dump());
    negatives.push_back(std::move(rec));
  }

  ordered_json doc;
  doc["command"] = "mine_negatives";
  doc["pool"] = pool.size();
  doc["annotated"] = annotated.size();
  doc["targets"] = targets.size();
  doc["negatives"] = std::move(negatives);

  std::vector<std::vector<std::string>> rows = {
      {"score_bin", "positive_pairs", "mined_negatives"}};
  for (std::size_t b = 0; b < 10; ++b) {
    rows.push_back({format_fixed(b / 10.0, 1) + "-" +
                        format_fixed((b + 1) / 10.0, 1),
                    std::to_string(positive_hist[b]),
                    std::to_string(negative_hist[b])});
  }

  CommandResult result;
  result.document_json = dump_document(doc);
  result.records = join_lines(lines);
  result.table = tsv(rows);
  result.summary = "mined " + std::to_string(targets.size()) +
                   " silver negative(s) from a pool of " +
                   std::to_string(pool.size());
  return result;
}

CommandResult run_bins(const BinsArgs& args) {
  const FrameOntology ontology = load_ontology_file(args.ontology);
  ordered_json doc;
  doc["command"] = "bins";
  doc["metric"] = args.metric;

  std::vector<BinScore> scored;
  LengthBins bins;
  ordered_json global;
  const bool sv_metric = args.metric == "sv-f1";
  if (sv_metric) {
    const std::vector<SVExample> gold = load_sv_gated(args.gold, ontology);
    const std::map<std::string, bool> predictions =
        load_labels(args.predictions);
    std::vector<long> lengths;
    lengths.reserve(gold.size());
    for (const SVExample& example : gold) {
      lengths.push_back(static_cast<long>(example.source.size()));
    }
    bins = compute_bins(lengths);
    scored = per_bin_sv(gold, predictions, bins);
    const SVResult overall = score_sv(gold, predictions);
    global = prf_json(overall.positive);
    global["accuracy"] = overall.accuracy;
  } else if (args.metric == "ceaf-rme-a-f1") {
    const std::vector<CDAEExample> gold = load_cdae_gated(args.gold, ontology);
    const std::vector<PredictionSet> predictions =
        load_predictions(args.predictions);
    std::vector<long> lengths;
    lengths.reserve(gold.size());
    for (const CDAEExample& example : gold) {
      lengths.push_back(static_cast<long>(example.source.size()));
    }
    bins = compute_bins(lengths);
    CeafRmeOptions options;
    options.side = args.side;
    options.mode = MatchMode::kSoft;
    options.refs = args.refs;
    options.case_fold = args.case_fold;
    scored = per_bin_ceaf(gold, predictions, ontology, options, bins);
    global = prf_json(score_ceaf_rme(gold, predictions, ontology, options).prf);
    doc["side"] = to_string(args.side);
    doc["refs"] = to_string(args.refs);
  } else {
    throw DomainError("unknown metric \"" + args.metric +
                      "\" (expected sv-f1 or ceaf-rme-a-f1)");
  }

  CommandResult result;
  if (bins.degenerate) {
    result.warnings.push_back(
        "all percentile edges coincide; source lengths are nearly constant "
        "and most examples fall in the 90-100 bin");
  }

  ordered_json edges = ordered_json::array();
  for (long edge : bins.edges) edges.push_back(edge);
  doc["edges"] = std::move(edges);
  doc["degenerate"] = bins.degenerate;

  std::vector<std::vector<std::string>> rows;
  if (sv_metric) {
    rows.push_back({"bin", "n", "accuracy", "precision", "recall", "f1"});
  } else {
    rows.push_back({"bin", "n", "precision", "recall", "f1"});
  }
  ordered_json bin_list = ordered_json::array();
  std::vector<std::string> labels;
  std::vector<std::optional<double>> f1_series;
  for (const BinScore& bin : scored) {
    labels.push_back(bin.label);
    ordered_json item;
    item["bin"] = bin.label;
    item["n"] = bin.count;
    if (bin.count == 0) {
      item["score"] = nullptr;
      f1_series.push_back(std::nullopt);
      if (sv_metric) {
        rows.push_back({bin.label, "0", "-", "-", "-", "-"});
      } else {
        rows.push_back({bin.label, "0", "-", "-", "-"});
      }
    } else {
      ordered_json score = prf_json(bin.prf);
      if (sv_metric) score["accuracy"] = bin.accuracy;
      item["score"] = std::move(score);
      f1_series.push_back(bin.prf.f1);
      if (sv_metric) {
        rows.push_back({bin.label, std::to_string(bin.count),
                        fixed4(bin.accuracy), fixed4(bin.prf.precision),
                        fixed4(bin.prf.recall), fixed4(bin.prf.f1)});
      } else {
        rows.push_back({bin.label, std::to_string(bin.count),
                        fixed4(bin.prf.precision), fixed4(bin.prf.recall),
                        fixed4(bin.prf.f1)});
      }
    }
    bin_list.push_back(std::move(item));
  }
  doc["bins"] = std::move(bin_list);
  doc["global"] = std::move(global);
  ordered_json warning_list = ordered_json::array();
  for (const std::string& w : result.warnings) warning_list.push_back(w);
  doc["warnings"] = std::move(warning_list);

  result.document_json = dump_document(doc);
  result.table = tsv(rows);
  result.chart_svg = svg_line_chart(
      args.metric + std::string(" by source length percentile"), labels,
      f1_series, "F1");

  std::size_t non_empty = 0;
  for (const BinScore& bin : scored) {
    if (bin.count > 0) ++non_empty;
  }
  result.summary = "binned by source length: " + std::to_string(non_empty) +
                   " of 6 bin(s) populated";
  return result;
}

}  // namespace crossdoc
