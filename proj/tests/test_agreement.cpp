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
#include <map>
#include <random>
#include <string>
#include <vector>

#include "crossdoc/scoring.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace crossdoc;

namespace {

TokenSpan mention(std::vector<std::string> surface) {
  TokenSpan s;
  s.surface = std::move(surface);
  return s;
}

double pairing_total(const std::vector<std::vector<double>>& sim,
                     const std::vector<int>& cols) {
  double total = 0.0;
  for (std::size_t r = 0; r < cols.size(); ++r) {
    total += sim[r][static_cast<std::size_t>(cols[r])];
  }
  return total;
}

// Exhaustive best-total oracle over all injections rows -> columns.
double oracle_best_total(const std::vector<std::vector<double>>& sim) {
  const std::size_t rows = sim.size();
  const std::size_t cols = sim.empty() ? 0 : sim[0].size();
  std::vector<bool> used(cols, false);
  double best = -1.0;
  auto dfs = [&](auto&& self, std::size_t r, double acc) -> void {
    if (r == rows) {
      best = std::max(best, acc);
      return;
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (used[c]) continue;
      used[c] = true;
      self(self, r + 1, acc + sim[r][c]);
      used[c] = false;
    }
  };
  dfs(dfs, 0, 0.0);
  return best;
}

std::vector<std::vector<double>> random_matrix(std::mt19937& rng,
                                               std::size_t rows,
                                               std::size_t cols) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::vector<double>> sim(rows, std::vector<double>(cols));
  for (auto& row : sim) {
    for (double& cell : row) cell = uniform(rng);
  }
  return sim;
}

using Annotation = std::map<std::string, std::vector<TokenSpan>>;

Annotation random_annotation(std::mt19937& rng, int max_mentions) {
  Annotation out;
  const std::size_t n_roles = 1 + rng() % 3;
  for (std::size_t r = 0; r < n_roles; ++r) {
    const std::string role = "role" + std::to_string(rng() % 3);
    const std::size_t n = rng() % static_cast<std::size_t>(max_mentions + 1);
    for (std::size_t m = 0; m < n; ++m) {
      out[role].push_back(mention(testutil::random_tokens(
          rng, 1 + static_cast<int>(rng() % 4), 3)));
    }
    if (out.count(role) && out[role].empty()) out.erase(role);
  }
  return out;
}

}  // namespace

TEST_CASE("best_pairing exhaustive and assignment agree on totals") {
  std::mt19937 rng(20260301);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t cols = 1 + rng() % 6;
    const std::size_t rows = 1 + rng() % cols;
    const auto sim = random_matrix(rng, rows, cols);
    const auto exhaustive = best_pairing(sim, PairingMethod::kExhaustive);
    const auto assignment = best_pairing(sim, PairingMethod::kAssignment);
    const double want = oracle_best_total(sim);
    CAPTURE(trial);
    CHECK(pairing_total(sim, exhaustive) ==
          doctest::Approx(want).epsilon(1e-9));
    CHECK(pairing_total(sim, assignment) ==
          doctest::Approx(want).epsilon(1e-9));
    // complete, injective pairings
    for (const auto& pairing : {exhaustive, assignment}) {
      REQUIRE(pairing.size() == rows);
      std::vector<int> sorted = pairing;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    }
  }
}

TEST_CASE("best_pairing assignment solver beyond the exhaustive cutoff") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t cols = 7 + rng() % 2;  // above the auto threshold
    const std::size_t rows = 7;
    const auto sim = random_matrix(rng, rows, cols);
    const auto got = best_pairing(sim);  // kAuto routes to assignment
    CAPTURE(trial);
    CHECK(pairing_total(sim, got) ==
          doctest::Approx(oracle_best_total(sim)).epsilon(1e-9));
  }
}

TEST_CASE("best_pairing input validation") {
  CHECK_THROWS_AS(best_pairing({{0.5}, {0.5, 0.5}}), DomainError);  // ragged
  CHECK_THROWS_AS(best_pairing({{0.5, 0.6}, {0.1, 0.2}, {0.3, 0.4}}),
                  DomainError);  // rows > columns
  CHECK(best_pairing({}).empty());
}

TEST_CASE("self agreement is perfect") {
  Annotation ann;
  ann["Attacker"] = {mention({"rebel", "forces"})};
  ann["Victim"] = {mention({"the", "city"}), mention({"inhabitants"})};
  const AgreementResult got = score_agreement(ann, ann);
  CHECK(got.prf.f1 == 1.0);
  CHECK(got.counts.fp == 0.0);
  CHECK(got.counts.fn == 0.0);
  CHECK(got.counts.tp == 3.0);
}

TEST_CASE("agreement worked example") {
  // Attacker matches exactly (a=1); Victim "The city" vs "city" has
  // similarity 2/3, so tp = 1 + 2/3, fp = fn = 1/6.
  Annotation reference;
  reference["Attacker"] = {mention({"rebel", "forces"})};
  reference["Victim"] = {mention({"The", "city"})};
  Annotation predicted;
  predicted["Attacker"] = {mention({"rebel", "forces"})};
  predicted["Victim"] = {mention({"city"})};
  const AgreementResult got = score_agreement(reference, predicted);
  CHECK(got.counts.tp == doctest::Approx(1.0 + 2.0 / 3.0).epsilon(1e-12));
  CHECK(got.counts.fp == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(got.counts.fn == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(got.prf.f1 == doctest::Approx(10.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("unpaired mentions are unit errors") {
  Annotation reference;
  reference["Victim"] = {mention({"a"}), mention({"b"})};
  Annotation predicted;
  predicted["Victim"] = {mention({"a"})};
  predicted["Time"] = {mention({"yesterday"})};
  const AgreementResult got = score_agreement(reference, predicted);
  // Victim: one paired identical (tp 1), one unpaired reference (fn 1).
  // Time: unpaired predicted (fp 1).
  CHECK(got.counts.tp == 1.0);
  CHECK(got.counts.fp == 1.0);
  CHECK(got.counts.fn == 1.0);
  bool saw_unpaired_pred = false;
  bool saw_unpaired_ref = false;
  for (const AgreementPair& pair : got.pairs) {
    if (pair.kind == AgreementPair::Kind::kUnpairedPredicted) {
      saw_unpaired_pred = true;
      CHECK(pair.role == "Time");
    }
    if (pair.kind == AgreementPair::Kind::kUnpairedReference) {
      saw_unpaired_ref = true;
      CHECK(pair.role == "Victim");
    }
  }
  CHECK(saw_unpaired_pred);
  CHECK(saw_unpaired_ref);
}

TEST_CASE("paired contributions conserve exactly one unit") {
  std::mt19937 rng(20260404);
  for (int trial = 0; trial < 500; ++trial) {
    const Annotation reference = random_annotation(rng, 4);
    const Annotation predicted = random_annotation(rng, 4);
    const AgreementResult got = score_agreement(reference, predicted);
    double tp = 0, fp = 0, fn = 0;
    for (const AgreementPair& pair : got.pairs) {
      CAPTURE(trial);
      if (pair.kind == AgreementPair::Kind::kPaired) {
        // float-exact: (1-a)/2 halves exactly, and the sum reassembles 1.0
        CHECK((pair.fp + pair.fn) + pair.tp == 1.0);
        CHECK(pair.similarity >= 0.0);
        CHECK(pair.similarity <= 1.0);
      } else {
        CHECK(pair.fp + pair.fn == 1.0);
      }
      tp += pair.tp;
      fp += pair.fp;
      fn += pair.fn;
    }
    CHECK(got.counts.tp == doctest::Approx(tp).epsilon(1e-12));
    CHECK(got.counts.fp == doctest::Approx(fp).epsilon(1e-12));
    CHECK(got.counts.fn == doctest::Approx(fn).epsilon(1e-12));
  }
}

TEST_CASE("agreement pairs the smaller side completely") {
  // Three predicted vs two reference mentions in one role: two pairs plus
  // one unpaired predicted, regardless of similarity values.
  Annotation reference;
  reference["R"] = {mention({"x"}), mention({"y"})};
  Annotation predicted;
  predicted["R"] = {mention({"p"}), mention({"q"}), mention({"r"})};
  const AgreementResult got = score_agreement(reference, predicted);
  int paired = 0, unpaired_pred = 0;
  for (const AgreementPair& pair : got.pairs) {
    if (pair.kind == AgreementPair::Kind::kPaired) ++paired;
    if (pair.kind == AgreementPair::Kind::kUnpairedPredicted) ++unpaired_pred;
  }
  CHECK(paired == 2);
  CHECK(unpaired_pred == 1);
}

TEST_CASE("agreement of empty annotations") {
  const AgreementResult got = score_agreement({}, {});
  CHECK(got.counts.tp == 0.0);
  CHECK(got.prf.precision == 1.0);  // nothing predicted, nothing to find
  CHECK(got.prf.f1 == 1.0);
}
