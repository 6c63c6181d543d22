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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "crossdoc/analysis.hpp"
#include "doctest.h"

using namespace crossdoc;

namespace {

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t hits = 0;
  for (std::size_t at = haystack.find(needle); at != std::string::npos;
       at = haystack.find(needle, at + needle.size())) {
    ++hits;
  }
  return hits;
}

Document token_doc(int length) {
  std::vector<std::string> tokens;
  tokens.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) tokens.push_back("t" + std::to_string(i % 7));
  return Document::from_tokens(tokens);
}

std::string padded_id(int index) {
  std::string id = std::to_string(index);
  while (id.size() < 3) id.insert(id.begin(), '0');
  return "e" + id;
}

SVExample sv_example(int index, int source_length, bool positive) {
  SVExample e;
  e.id = padded_id(index);
  e.report = Document::from_text("Rebels attacked .");
  e.trigger.span.start = 1;
  e.trigger.span.end = 2;
  e.trigger.span.surface = {"attacked"};
  e.trigger.frame = "attack";
  e.source = token_doc(source_length);
  e.positive = positive;
  return e;
}

FrameOntology attack_ontology() {
  FrameOntology o;
  o.frames["attack"] = {"Attacker", "Victim", "Time", "Place"};
  return o;
}

CDAEExample random_cdae_example(std::mt19937_64& rng, int index) {
  CDAEExample e;
  e.id = padded_id(index);
  e.report = Document::from_text("Rebels attacked the city .");
  e.trigger.span.start = 1;
  e.trigger.span.end = 2;
  e.trigger.span.surface = {"attacked"};
  e.trigger.frame = "attack";
  const int len = 1 + static_cast<int>(rng() % 120);
  e.source = token_doc(len);
  for (const char* role : {"Attacker", "Victim", "Time", "Place"}) {
    if (rng() % 2 == 0) continue;
    ArgumentEntity entity;
    entity.role = role;
    entity.side = DocSide::kSource;
    const int mentions = 1 + static_cast<int>(rng() % 2);
    for (int m = 0; m < mentions; ++m) {
      TokenSpan span;
      span.start = static_cast<int>(rng() % static_cast<std::uint64_t>(len));
      const int room = std::min(3, len - span.start);
      span.end = span.start + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(room));
      span.surface = span_surface(e.source, span.start, span.end, "test ref");
      entity.mentions.push_back(std::move(span));
    }
    e.source_refs[role].push_back(std::move(entity));
  }
  return e;
}

PredictionSet random_predictions(std::mt19937_64& rng, const CDAEExample& e) {
  PredictionSet p;
  p.example_id = e.id;
  p.side = DocSide::kSource;
  const int len = static_cast<int>(e.source.size());
  for (const char* role : {"Attacker", "Victim", "Time", "Place"}) {
    const int spans = static_cast<int>(rng() % 3);
    for (int s = 0; s < spans; ++s) {
      TokenSpan span;
      span.start = static_cast<int>(rng() % static_cast<std::uint64_t>(len));
      const int room = std::min(3, len - span.start);
      span.end = span.start + 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(room));
      p.args[role].push_back(std::move(span));  // surface filled by the scorer
    }
  }
  return p;
}

}  // namespace

TEST_CASE("percentile edges use the nearest rank") {
  std::vector<long> hundred(100);
  std::iota(hundred.begin(), hundred.end(), 1);
  std::mt19937_64 rng(3);
  std::shuffle(hundred.begin(), hundred.end(), rng);  // input order is free
  const LengthBins bins = compute_bins(hundred);
  CHECK(bins.edges == std::array<long, 5>{10, 25, 50, 75, 90});
  CHECK_FALSE(bins.degenerate);

  std::vector<long> ten(10);
  std::iota(ten.begin(), ten.end(), 1);
  const LengthBins small = compute_bins(ten);
  CHECK(small.edges == std::array<long, 5>{1, 3, 5, 8, 9});

  const LengthBins flat = compute_bins(std::vector<long>(10, 7));
  CHECK(flat.edges == std::array<long, 5>{7, 7, 7, 7, 7});
  CHECK(flat.degenerate);

  CHECK_THROWS_AS(compute_bins({1, 2, 3, 4, 5}), DomainError);
}

TEST_CASE("bin boundaries are left-closed on the right edge") {
  LengthBins bins;
  bins.edges = {10, 25, 50, 75, 90};
  CHECK(bin_index(bins, 1) == 0);
  CHECK(bin_index(bins, 9) == 0);
  CHECK(bin_index(bins, 10) == 1);  // a length equal to an edge goes right
  CHECK(bin_index(bins, 24) == 1);
  CHECK(bin_index(bins, 25) == 2);
  CHECK(bin_index(bins, 49) == 2);
  CHECK(bin_index(bins, 50) == 3);
  CHECK(bin_index(bins, 75) == 4);
  CHECK(bin_index(bins, 89) == 4);
  CHECK(bin_index(bins, 90) == 5);
  CHECK(bin_index(bins, 100000) == 5);

  // degenerate edges push everything at or above the edge to the top bin
  LengthBins flat;
  flat.edges = {7, 7, 7, 7, 7};
  CHECK(bin_index(flat, 6) == 0);
  CHECK(bin_index(flat, 7) == 5);
  CHECK(bin_index(flat, 8) == 5);

  // the index is monotone in length and always lands in [0, 5]
  int previous = 0;
  for (long length = 0; length <= 120; ++length) {
    const int b = bin_index(bins, length);
    CHECK(b >= previous);
    CHECK(b >= 0);
    CHECK(b <= 5);
    previous = b;
  }
}

TEST_CASE("per-bin classification sums reproduce the corpus score") {
  std::vector<SVExample> gold;
  std::map<std::string, bool> predictions;
  std::vector<long> lengths;
  for (int i = 0; i < 24; ++i) {
    const bool positive = i % 3 != 0;
    gold.push_back(sv_example(i, i + 1, positive));
    // wrong on every fourth example
    predictions[gold.back().id] = (i % 4 == 0) ? !positive : positive;
    lengths.push_back(i + 1);
  }
  const LengthBins bins = compute_bins(lengths);
  const std::vector<BinScore> per_bin = per_bin_sv(gold, predictions, bins);
  const SVResult global = score_sv(gold, predictions);

  REQUIRE(per_bin.size() == 6);
  std::size_t total = 0;
  long correct = 0;
  double tp = 0.0, p_den = 0.0, r_den = 0.0;
  for (std::size_t b = 0; b < per_bin.size(); ++b) {
    CHECK(per_bin[b].label == LengthBins::kLabels[b]);
    total += per_bin[b].count;
    correct += std::lround(per_bin[b].accuracy *
                           static_cast<double>(per_bin[b].count));
    tp += per_bin[b].prf.precision_numerator;
    p_den += per_bin[b].prf.precision_denominator;
    r_den += per_bin[b].prf.recall_denominator;
  }
  CHECK(total == gold.size());
  CHECK(correct == std::lround(global.accuracy * 24.0));
  // the counts behind the positive-class PRF are integers, so the per-bin
  // sums must reproduce the corpus-level sums exactly
  CHECK(tp == global.positive.precision_numerator);
  CHECK(p_den == global.positive.precision_denominator);
  CHECK(r_den == global.positive.recall_denominator);
}

TEST_CASE("per-bin classification validates prediction coverage") {
  std::vector<SVExample> gold;
  std::vector<long> lengths;
  for (int i = 0; i < 6; ++i) {
    gold.push_back(sv_example(i, i + 1, true));
    lengths.push_back(i + 1);
  }
  std::map<std::string, bool> predictions;
  for (int i = 0; i < 5; ++i) predictions[gold[i].id] = true;
  CHECK_THROWS_WITH_AS(per_bin_sv(gold, predictions, compute_bins(lengths)),
                       doctest::Contains(gold[5].id), DomainError);
}

TEST_CASE("an empty bin reports a zero count and no score") {
  // lengths {1,2,3,4,5,100}: every length is >= the first edge, so the
  // leftmost bin stays empty
  std::vector<SVExample> gold;
  std::vector<long> lengths = {1, 2, 3, 4, 5, 100};
  std::map<std::string, bool> predictions;
  for (int i = 0; i < 6; ++i) {
    gold.push_back(sv_example(i, static_cast<int>(lengths[i]), true));
    predictions[gold.back().id] = true;
  }
  const std::vector<BinScore> per_bin =
      per_bin_sv(gold, predictions, compute_bins(lengths));
  CHECK(per_bin[0].count == 0);
  CHECK(per_bin[0].accuracy == 0.0);
  CHECK(per_bin[0].prf.f1 == 0.0);
}

TEST_CASE("per-bin extraction sums reproduce the corpus score bitwise") {
  const FrameOntology ontology = attack_ontology();
  std::mt19937_64 rng(20260822);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 6 + static_cast<int>(rng() % 20);
    std::vector<CDAEExample> gold;
    std::vector<PredictionSet> predictions;
    std::vector<long> lengths;
    for (int i = 0; i < n; ++i) {
      gold.push_back(random_cdae_example(rng, i));
      lengths.push_back(static_cast<long>(gold.back().source.size()));
      // a missing prediction set counts as predicting nothing
      if (rng() % 4 != 0) predictions.push_back(random_predictions(rng, gold.back()));
    }
    CeafRmeOptions options;
    options.mode = trial % 2 == 0 ? MatchMode::kSoft : MatchMode::kExact;
    const LengthBins bins = compute_bins(lengths);
    const CeafRmeResult global = score_ceaf_rme(gold, predictions, ontology, options);
    const std::vector<BinScore> per_bin =
        per_bin_ceaf(gold, predictions, ontology, options, bins);

    std::map<std::string, int> bin_of;
    for (const CDAEExample& e : gold) {
      bin_of[e.id] = bin_index(bins, static_cast<long>(e.source.size()));
    }
    REQUIRE(per_bin.size() == 6);
    std::size_t total = 0;
    for (int b = 0; b < 6; ++b) {
      total += per_bin[b].count;
      // independent recomputation: sum the global per-example rows that fall
      // into this bin, in the id order the scorer guarantees
      double pn = 0.0, pd = 0.0, rn = 0.0, rd = 0.0;
      std::size_t members = 0;
      for (const ExampleScore& row : global.per_example) {
        if (bin_of.at(row.example_id) != b) continue;
        ++members;
        pn += row.precision_numerator;
        pd += row.precision_denominator;
        rn += row.recall_numerator;
        rd += row.recall_denominator;
      }
      CHECK(per_bin[b].count == members);
      if (members == 0) continue;
      const PRF expected = finalize_prf(pn, pd, rn, rd);
      CHECK(per_bin[b].prf.precision_numerator == expected.precision_numerator);
      CHECK(per_bin[b].prf.precision_denominator == expected.precision_denominator);
      CHECK(per_bin[b].prf.recall_numerator == expected.recall_numerator);
      CHECK(per_bin[b].prf.recall_denominator == expected.recall_denominator);
      CHECK(per_bin[b].prf.precision == expected.precision);
      CHECK(per_bin[b].prf.recall == expected.recall);
      CHECK(per_bin[b].prf.f1 == expected.f1);
    }
    CHECK(total == gold.size());
  }
}

TEST_CASE("per-bin extraction rejects a prediction for an unknown id") {
  std::mt19937_64 rng(5);
  std::vector<CDAEExample> gold;
  std::vector<long> lengths;
  for (int i = 0; i < 6; ++i) {
    gold.push_back(random_cdae_example(rng, i));
    lengths.push_back(static_cast<long>(gold.back().source.size()));
  }
  PredictionSet ghost;
  ghost.example_id = "ghost";
  ghost.side = DocSide::kSource;
  CHECK_THROWS_WITH_AS(
      per_bin_ceaf(gold, {ghost}, attack_ontology(), CeafRmeOptions{},
                   compute_bins(lengths)),
      doctest::Contains("ghost"), DomainError);
}

TEST_CASE("fixed-precision rendering is stable") {
  CHECK(format_fixed(0.5, 4) == "0.5000");
  CHECK(format_fixed(1.0, 4) == "1.0000");
  CHECK(format_fixed(2.0 / 3.0, 4) == "0.6667");
  CHECK(format_fixed(3.14159, 2) == "3.14");
  CHECK(format_fixed(-0.25, 2) == "-0.25");
  CHECK(format_fixed(12.0, 3) == "12.000");
}

TEST_CASE("line chart renders a self-contained svg") {
  const std::vector<std::string> labels = {"0-10", "10-25", "25-50", "50-75"};
  const std::vector<std::optional<double>> values = {0.1, std::nullopt, 2.0,
                                                     0.0};
  const std::string svg =
      svg_line_chart("f1 by length", labels, values, "F1");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("f1 by length") != std::string::npos);
  CHECK(svg.find(">F1</text>") != std::string::npos);
  for (const std::string& label : labels) {
    CHECK(svg.find(">" + label + "</text>") != std::string::npos);
  }
  // a gap splits the line into two polylines around the missing value
  CHECK(count_of(svg, "<polyline") == 2);
  CHECK(count_of(svg, "<circle") == 3);
  // values clamp into [0, 1]: 2.0 plots at the top, 0.0 at the axis
  CHECK(svg.find("cy=\"48.0\"") != std::string::npos);
  CHECK(svg.find("cy=\"344.0\"") != std::string::npos);
  CHECK(svg.find("<script") == std::string::npos);

  const std::string empty = svg_line_chart(
      "t", labels, {std::nullopt, std::nullopt, std::nullopt, std::nullopt},
      "y");
  CHECK(count_of(empty, "<polyline") == 0);
  CHECK(count_of(empty, "<circle") == 0);

  CHECK_THROWS_AS(svg_line_chart("t", labels, {0.5}, "y"), DomainError);
}
