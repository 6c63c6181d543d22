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

#include <algorithm>
#include <limits>
#include <set>

#include "crossdoc/scoring.hpp"

namespace crossdoc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Depth-first search over all injections of rows into columns, keeping the
// first maximum encountered (deterministic tie-break by enumeration order).
void exhaust(const std::vector<std::vector<double>>& sim, std::size_t row,
             std::vector<int>& used, std::vector<int>& current, double sum,
             std::vector<int>& best, double& best_sum) {
  if (row == sim.size()) {
    if (sum > best_sum) {
      best_sum = sum;
      best = current;
    }
    return;
  }
  for (std::size_t col = 0; col < sim[row].size(); ++col) {
    if (used[col]) continue;
    used[col] = 1;
    current[row] = static_cast<int>(col);
    exhaust(sim, row + 1, used, current, sum + sim[row][col], best, best_sum);
    used[col] = 0;
  }
}

// Potential-based assignment solver: minimizes total cost over complete
// assignments of rows to distinct columns (rows <= columns), O(n^2 m).
std::vector<int> assignment_min(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const int m = static_cast<int>(cost[0].size());
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> match(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (match[j] > 0) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

std::vector<int> best_pairing(const std::vector<std::vector<double>>& sim,
                              PairingMethod method) {
  if (sim.empty()) return {};
  const std::size_t rows = sim.size();
  const std::size_t cols = sim[0].size();
  for (const auto& row : sim) {
    if (row.size() != cols) throw DomainError("ragged similarity matrix");
  }
  if (rows > cols) {
    throw DomainError("pairing needs rows <= columns");
  }
  if (method == PairingMethod::kAuto) {
    method = (rows <= 6 && cols <= 6) ? PairingMethod::kExhaustive
                                      : PairingMethod::kAssignment;
  }
  if (method == PairingMethod::kExhaustive) {
    std::vector<int> used(cols, 0);
    std::vector<int> current(rows, -1);
    std::vector<int> best(rows, -1);
    double best_sum = -kInf;
    exhaust(sim, 0, used, current, 0.0, best, best_sum);
    return best;
  }
  std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) cost[r][c] = -sim[r][c];
  }
  return assignment_min(cost);
}

AgreementResult score_agreement(
    const std::map<std::string, std::vector<TokenSpan>>& reference,
    const std::map<std::string, std::vector<TokenSpan>>& predicted,
    const EditCosts& costs) {
  std::set<std::string> roles;
  for (const auto& [role, spans] : reference) {
    (void)spans;
    roles.insert(role);
  }
  for (const auto& [role, spans] : predicted) {
    (void)spans;
    roles.insert(role);
  }

  AgreementResult result;
  static const std::vector<TokenSpan> kNone;
  for (const std::string& role : roles) {
    auto ref_it = reference.find(role);
    auto pred_it = predicted.find(role);
    const auto& refs = ref_it == reference.end() ? kNone : ref_it->second;
    const auto& preds = pred_it == predicted.end() ? kNone : pred_it->second;

    // Orient so the smaller side is the row side; every row gets paired.
    const bool pred_rows = preds.size() <= refs.size();
    const auto& row_spans = pred_rows ? preds : refs;
    const auto& col_spans = pred_rows ? refs : preds;

    std::vector<int> col_used(col_spans.size(), 0);
    if (!row_spans.empty()) {
      std::vector<std::vector<double>> sim(
          row_spans.size(), std::vector<double>(col_spans.size(), 0.0));
      for (std::size_t r = 0; r < row_spans.size(); ++r) {
        for (std::size_t c = 0; c < col_spans.size(); ++c) {
          sim[r][c] =
              span_similarity(row_spans[r].surface, col_spans[c].surface, costs);
        }
      }
      const std::vector<int> pairing = best_pairing(sim);
      for (std::size_t r = 0; r < row_spans.size(); ++r) {
        const int c = pairing[r];
        col_used[c] = 1;
        const double a = sim[r][c];
        const double half = (1.0 - a) / 2.0;
        AgreementPair pair;
        pair.role = role;
        pair.kind = AgreementPair::Kind::kPaired;
        pair.similarity = a;
        pair.tp = a;
        pair.fp = half;
        pair.fn = half;
        result.counts.tp += a;
        result.counts.fp += half;
        result.counts.fn += half;
        result.pairs.push_back(std::move(pair));
      }
    }
    for (std::size_t c = 0; c < col_spans.size(); ++c) {
      if (col_used[c]) continue;
      AgreementPair pair;
      pair.role = role;
      const bool leftover_is_predicted = !pred_rows;
      pair.kind = leftover_is_predicted
                      ? AgreementPair::Kind::kUnpairedPredicted
                      : AgreementPair::Kind::kUnpairedReference;
      if (leftover_is_predicted) {
        pair.fp = 1.0;
        result.counts.fp += 1.0;
      } else {
        pair.fn = 1.0;
        result.counts.fn += 1.0;
      }
      result.pairs.push_back(std::move(pair));
    }
  }
  result.prf = finalize_prf(result.counts.tp, result.counts.tp + result.counts.fp,
                            result.counts.tp, result.counts.tp + result.counts.fn);
  return result;
}

}  // namespace crossdoc
