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

// Command-line front end. All work happens behind the C API; this file only
// parses flags, routes output channels to files, and maps statuses to exit
// codes: 0 success, 1 domain/validation error, 2 usage/schema/I-O error,
// 3 provider failure.

#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "crossdoc/crossdoc.h"

namespace {

// File destinations for the result channels; empty means "do not write".
struct OutputPaths {
  std::string out;      // structured JSON document
  std::string records;  // newline-delimited record lines
  std::string table;    // tab-separated table
  std::string chart;    // vector-graphic chart
};

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

bool write_file(const std::string& path, const char* content) {
  if (content == nullptr) {
    std::fprintf(stderr, "error: this command produces no such output\n");
    return false;
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.flush();
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    return false;
  }
  return true;
}

// Prints warnings and the summary, writes the requested files, frees the
// result, and converts the status into the process exit code.
int emit(crossdoc_status status, crossdoc_result* result,
         const OutputPaths& paths) {
  if (status != CROSSDOC_OK) {
    std::fprintf(stderr, "error: %s\n", crossdoc_last_error());
    return status == CROSSDOC_ERR_USAGE ? 2 : static_cast<int>(status);
  }
  int code = crossdoc_result_exit_code(result);
  for (size_t i = 0; i < crossdoc_result_warning_count(result); ++i) {
    std::fprintf(stderr, "warning: %s\n", crossdoc_result_warning(result, i));
  }
  const bool wrote =
      (paths.out.empty() ||
       write_file(paths.out, crossdoc_result_document(result))) &&
      (paths.records.empty() ||
       write_file(paths.records, crossdoc_result_records(result))) &&
      (paths.table.empty() ||
       write_file(paths.table, crossdoc_result_table(result))) &&
      (paths.chart.empty() ||
       write_file(paths.chart, crossdoc_result_chart(result)));
  if (!wrote) {
    crossdoc_result_free(result);
    return 2;
  }
  const char* summary = crossdoc_result_summary(result);
  if (summary != nullptr && summary[0] != '\0') {
    std::printf("%s\n", summary);
  }
  crossdoc_result_free(result);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-document event extraction toolkit"};
  app.set_version_flag("--version", crossdoc_version());
  app.require_subcommand(1);
  int rc = 0;

  // validate
  {
    auto* cmd = app.add_subcommand("validate", "Check a corpus file");
    auto task = std::make_shared<std::string>();
    auto corpus = std::make_shared<std::string>();
    auto ontology = std::make_shared<std::string>();
    auto paths = std::make_shared<OutputPaths>();
    cmd->add_option("--task", *task, "Corpus kind: sv or cdae")
        ->required()
        ->check(CLI::IsMember({"sv", "cdae"}));
    cmd->add_option("--corpus", *corpus, "Corpus records")->required();
    cmd->add_option("--ontology", *ontology, "Frame ontology")->required();
    cmd->add_option("--out", paths->out, "Write the JSON report here");
    cmd->callback([=, &rc] {
      crossdoc_result* result = nullptr;
      const crossdoc_status status = crossdoc_validate(
          task->c_str(), corpus->c_str(), ontology->c_str(), &result);
      rc = emit(status, result, *paths);
    });
  }

  // score sv | score cdae
  {
    auto* score = app.add_subcommand("score", "Score predictions");
    score->require_subcommand(1);

    auto* sv = score->add_subcommand("sv", "Source validation accuracy/F1");
    {
      auto gold = std::make_shared<std::string>();
      auto ontology = std::make_shared<std::string>();
      auto predictions = std::make_shared<std::string>();
      auto paths = std::make_shared<OutputPaths>();
      sv->add_option("--gold", *gold, "Gold corpus")->required();
      sv->add_option("--ontology", *ontology, "Frame ontology")->required();
      sv->add_option("--predictions", *predictions, "Label records")
          ->required();
      sv->add_option("--out", paths->out, "Write the JSON document here");
      sv->add_option("--table", paths->table, "Write the score table here");
      sv->callback([=, &rc] {
        crossdoc_result* result = nullptr;
        const crossdoc_status status = crossdoc_score_sv(
            gold->c_str(), ontology->c_str(), predictions->c_str(), &result);
        rc = emit(status, result, *paths);
      });
    }

    auto* cdae = score->add_subcommand("cdae", "Argument extraction CEAF-RME");
    {
      auto gold = std::make_shared<std::string>();
      auto ontology = std::make_shared<std::string>();
      auto predictions = std::make_shared<std::string>();
      auto side = std::make_shared<std::string>("source");
      auto match = std::make_shared<std::string>("exact");
      auto refs = std::make_shared<std::string>("mention");
      auto ensemble = std::make_shared<bool>(false);
      auto case_fold = std::make_shared<bool>(false);
      auto per_example = std::make_shared<bool>(false);
      auto jobs = std::make_shared<int>(1);
      auto paths = std::make_shared<OutputPaths>();
      cdae->add_option("--gold", *gold, "Gold corpus")->required();
      cdae->add_option("--ontology", *ontology, "Frame ontology")->required();
      cdae->add_option("--predictions", *predictions, "Prediction records")
          ->required();
      cdae->add_option("--side", *side, "Document side to score")
          ->check(CLI::IsMember({"report", "source"}));
      cdae->add_option("--match", *match, "Span matching mode")
          ->check(CLI::IsMember({"exact", "soft", "both"}));
      cdae->add_option("--refs", *refs, "Reference granularity")
          ->check(CLI::IsMember({"mention", "cluster"}));
      cdae->add_flag("--ensemble-report-baseline", *ensemble,
                     "Back model-empty roles off to the report arguments "
                     "(source side)");
      cdae->add_flag("--case-fold", *case_fold,
                     "Case-insensitive token comparison");
      cdae->add_flag("--per-example", *per_example,
                     "Include per-example sums in the document");
      cdae->add_option("--jobs", *jobs, "Worker threads")
          ->check(CLI::Range(1, 512));
      cdae->add_option("--out", paths->out, "Write the JSON document here");
      cdae->add_option("--table", paths->table, "Write the score table here");
      cdae->callback([=, &rc] {
        crossdoc_result* result = nullptr;
        const crossdoc_status status = crossdoc_score_cdae(
            gold->c_str(), ontology->c_str(), predictions->c_str(),
            side->c_str(), match->c_str(), refs->c_str(), *ensemble ? 1 : 0,
            *case_fold ? 1 : 0, *per_example ? 1 : 0, *jobs, &result);
        rc = emit(status, result, *paths);
      });
    }
  }

  // agreement
  {
    auto* cmd =
        app.add_subcommand("agreement", "Similarity-weighted annotator F1");
    auto gold = std::make_shared<std::string>();
    auto ontology = std::make_shared<std::string>();
    auto annotator_a = std::make_shared<std::string>();
    auto annotator_b = std::make_shared<std::string>();
    auto quartile = std::make_shared<bool>(false);
    auto case_fold = std::make_shared<bool>(false);
    auto paths = std::make_shared<OutputPaths>();
    cmd->add_option("--gold", *gold, "Corpus supplying documents and frames")
        ->required();
    cmd->add_option("--ontology", *ontology, "Frame ontology")->required();
    cmd->add_option("--annotator-a", *annotator_a,
                    "Reference annotation (prediction records)")
        ->required();
    cmd->add_option("--annotator-b", *annotator_b,
                    "Compared annotation (prediction records)")
        ->required();
    cmd->add_flag("--bottom-quartile", *quartile,
                  "List examples at or below the 25th percentile of F1");
    cmd->add_flag("--case-fold", *case_fold,
                  "Case-insensitive token comparison");
    cmd->add_option("--out", paths->out, "Write the JSON document here");
    cmd->add_option("--table", paths->table, "Write the per-example table here");
    cmd->callback([=, &rc] {
      crossdoc_result* result = nullptr;
      const crossdoc_status status = crossdoc_agreement(
          gold->c_str(), ontology->c_str(), annotator_a->c_str(),
          annotator_b->c_str(), *quartile ? 1 : 0, *case_fold ? 1 : 0,
          &result);
      rc = emit(status, result, *paths);
    });
  }

  // baseline majority | lemma | report
  {
    auto* baseline = app.add_subcommand("baseline", "Deterministic baselines");
    baseline->require_subcommand(1);
    struct BaselineFlags {
      std::string corpus;
      std::string ontology;
      std::string train_labels;
      std::string lemma_table;
      std::string refs = "mention";
      OutputPaths paths;
    };
    auto add_common = [](CLI::App* cmd, const std::shared_ptr<BaselineFlags>& f,
                         const char* corpus_help) {
      cmd->add_option("--corpus", f->corpus, corpus_help)->required();
      cmd->add_option("--ontology", f->ontology, "Frame ontology")->required();
      cmd->add_option("--out", f->paths.out, "Write the JSON document here");
      cmd->add_option("--records", f->paths.records,
                      "Write the predicted records here");
    };
    auto run = [&rc](const char* kind, const BaselineFlags& f) {
      crossdoc_result* result = nullptr;
      const crossdoc_status status = crossdoc_baseline(
          kind, f.corpus.c_str(), f.ontology.c_str(), opt(f.train_labels),
          opt(f.lemma_table), f.refs.c_str(), &result);
      rc = emit(status, result, f.paths);
    };

    auto* majority =
        baseline->add_subcommand("majority", "Majority training label");
    {
      auto f = std::make_shared<BaselineFlags>();
      add_common(majority, f, "Evaluation corpus (labels ignored)");
      majority->add_option("--train-labels", f->train_labels,
                           "Training label records")
          ->required();
      majority->callback([=] { run("majority", *f); });
    }

    auto* lemma =
        baseline->add_subcommand("lemma", "Trigger-lemma-in-source test");
    {
      auto f = std::make_shared<BaselineFlags>();
      add_common(lemma, f, "Evaluation corpus (labels ignored)");
      lemma->add_option("--lemma-table", f->lemma_table,
                        "token TAB lemma lookup table (defaults to "
                        "CROSSDOC_LEMMA_TABLE)");
      lemma->callback([=] { run("lemma", *f); });
    }

    auto* report = baseline->add_subcommand(
        "report", "Copy gold report arguments to the source side");
    {
      auto f = std::make_shared<BaselineFlags>();
      add_common(report, f, "Gold corpus");
      report->add_option("--refs", f->refs, "Mentions to copy per entity")
          ->check(CLI::IsMember({"mention", "cluster"}));
      report->callback([=] { run("report", *f); });
    }
  }

  // plan
  {
    auto* cmd =
        app.add_subcommand("plan", "Annotation counts from frame statistics");
    auto stats = std::make_shared<std::string>();
    auto paths = std::make_shared<OutputPaths>();
    cmd->add_option("--stats", *stats, "Frame statistics records")->required();
    cmd->add_option("--out", paths->out, "Write the JSON document here");
    cmd->add_option("--table", paths->table, "Write the plan table here");
    cmd->callback([=, &rc] {
      crossdoc_result* result = nullptr;
      const crossdoc_status status = crossdoc_plan(stats->c_str(), &result);
      rc = emit(status, result, *paths);
    });
  }

  // sample
  {
    auto* cmd = app.add_subcommand(
        "sample", "Diversity-aware stratified candidate selection");
    auto pool = std::make_shared<std::string>();
    auto plan = std::make_shared<std::string>();
    auto target = std::make_shared<long>(0);
    auto seed = std::make_shared<unsigned long long>(0);
    auto embedding_cache = std::make_shared<std::string>();
    auto provider_url = std::make_shared<std::string>();
    auto paths = std::make_shared<OutputPaths>();
    cmd->add_option("--pool", *pool, "Candidate pool records")->required();
    auto* plan_opt =
        cmd->add_option("--plan", *plan, "Per-frame planned counts");
    cmd->add_option("--target", *target, "Uniform per-frame sample size")
        ->check(CLI::PositiveNumber)
        ->excludes(plan_opt);
    cmd->add_option("--seed", *seed, "Sampling seed")->required();
    cmd->add_option("--embedding-cache", *embedding_cache,
                    "Precomputed embeddings for pool entries without vectors");
    cmd->add_option("--provider-url", *provider_url,
                    "host:port of an embedding service (defaults to "
                    "CROSSDOC_PROVIDER_URL)");
    cmd->add_option("--out", paths->out, "Write the JSON document here");
    cmd->add_option("--records", paths->records,
                    "Write the selected candidate records here");
    cmd->callback([=, &rc] {
      if (plan->empty() && *target <= 0) {
        std::fprintf(stderr,
                     "error: sample needs either --plan or --target\n");
        rc = 2;
        return;
      }
      crossdoc_result* result = nullptr;
      const crossdoc_status status = crossdoc_sample(
          pool->c_str(), opt(*plan), *target, *seed, opt(*embedding_cache),
          opt(*provider_url), &result);
      rc = emit(status, result, *paths);
    });
  }

  // mine-negatives
  {
    auto* cmd = app.add_subcommand(
        "mine-negatives", "Pair reports with highest-similarity wrong sources");
    auto pool = std::make_shared<std::string>();
    auto annotated = std::make_shared<std::string>();
    auto targets = std::make_shared<std::string>();
    auto count = std::make_shared<long>(0);
    auto seed = std::make_shared<unsigned long long>(0);
    auto similarity_cache = std::make_shared<std::string>();
    auto provider_url = std::make_shared<std::string>();
    auto paths = std::make_shared<OutputPaths>();
    cmd->add_option("--pool", *pool, "Candidate pool records")->required();
    cmd->add_option("--annotated", *annotated,
                    "Ids already annotated (excluded everywhere)");
    auto* targets_opt = cmd->add_option("--targets", *targets,
                                        "Ids to mine negatives for");
    auto* seed_opt = cmd->add_option("--seed", *seed, "Subsampling seed");
    cmd->add_option("--count", *count,
                    "Mine for a seeded subsample of this many targets")
        ->check(CLI::PositiveNumber)
        ->excludes(targets_opt)
        ->needs(seed_opt);
    cmd->add_option("--similarity-cache", *similarity_cache,
                    "Precomputed report-source similarity records");
    cmd->add_option("--provider-url", *provider_url,
                    "host:port of a similarity service (defaults to "
                    "CROSSDOC_PROVIDER_URL)");
    cmd->add_option("--out", paths->out, "Write the JSON document here");
    cmd->add_option("--records", paths->records,
                    "Write the mined pair records here");
    cmd->add_option("--table", paths->table,
                    "Write the positive/negative score histogram here");
    cmd->callback([=, &rc] {
      crossdoc_result* result = nullptr;
      const crossdoc_status status = crossdoc_mine_negatives(
          pool->c_str(), opt(*annotated), opt(*targets), *count, *seed,
          opt(*similarity_cache), opt(*provider_url), &result);
      rc = emit(status, result, *paths);
    });
  }

  // bins
  {
    auto* cmd = app.add_subcommand(
        "bins", "Scores by source-length percentile bin");
    auto metric = std::make_shared<std::string>();
    auto gold = std::make_shared<std::string>();
    auto ontology = std::make_shared<std::string>();
    auto predictions = std::make_shared<std::string>();
    auto side = std::make_shared<std::string>("source");
    auto refs = std::make_shared<std::string>("mention");
    auto case_fold = std::make_shared<bool>(false);
    auto paths = std::make_shared<OutputPaths>();
    cmd->add_option("--metric", *metric, "sv-f1 or ceaf-rme-a-f1")
        ->required()
        ->check(CLI::IsMember({"sv-f1", "ceaf-rme-a-f1"}));
    cmd->add_option("--gold", *gold, "Gold corpus")->required();
    cmd->add_option("--ontology", *ontology, "Frame ontology")->required();
    cmd->add_option("--predictions", *predictions,
                    "Label or prediction records, matching the metric")
        ->required();
    cmd->add_option("--side", *side, "Document side (argument metric)")
        ->check(CLI::IsMember({"report", "source"}));
    cmd->add_option("--refs", *refs, "Reference granularity (argument metric)")
        ->check(CLI::IsMember({"mention", "cluster"}));
    cmd->add_flag("--case-fold", *case_fold,
                  "Case-insensitive token comparison");
    cmd->add_option("--out", paths->out, "Write the JSON document here");
    cmd->add_option("--table", paths->table, "Write the per-bin table here");
    cmd->add_option("--chart", paths->chart, "Write a line chart here");
    cmd->callback([=, &rc] {
      crossdoc_result* result = nullptr;
      const crossdoc_status status = crossdoc_bins(
          metric->c_str(), gold->c_str(), ontology->c_str(),
          predictions->c_str(), side->c_str(), refs->c_str(),
          *case_fold ? 1 : 0, &result);
      rc = emit(status, result, *paths);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 2;
  }
  return rc;
}
