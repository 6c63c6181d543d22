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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossdoc/model.hpp"
#include "crossdoc/scoring.hpp"

// Performance broken down by source-document length percentile: six bins
// bounded by the {10, 25, 50, 75, 90}th percentiles of the evaluated
// split's source token counts.

namespace crossdoc {

struct LengthBins {
  static constexpr std::array<const char*, 6> kLabels = {
      "0-10", "10-25", "25-50", "50-75", "75-90", "90-100"};
  std::array<long, 5> edges = {0, 0, 0, 0, 0};
  // All edges coincide: nearly everything lands in the top bin.
  bool degenerate = false;
};

// Nearest-rank percentile edges over the given token counts. At least six
// lengths are required (six bins); throws DomainError otherwise.
LengthBins compute_bins(std::vector<long> lengths);

// Bin for one length: bin i is [edge_{i-1}, edge_i), the first bin is
// everything below the first edge, the last bin is closed above.
int bin_index(const LengthBins& bins, long length);

struct BinScore {
  std::string label;
  std::size_t count = 0;  // examples in the bin; 0 means no score
  double accuracy = 0.0;  // classification metric only
  PRF prf;
};

// Source-validation accuracy/PRF per source-length bin. The prediction map
// must cover the split (same contract as score_sv); micro sums per bin add
// up to the global score.
std::vector<BinScore> per_bin_sv(const std::vector<SVExample>& gold,
                                 const std::map<std::string, bool>& predictions,
                                 const LengthBins& bins);

// Argument-extraction score per source-length bin, same options as
// score_ceaf_rme (soft mode reproduces the similarity-weighted variant).
std::vector<BinScore> per_bin_ceaf(const std::vector<CDAEExample>& gold,
                                   const std::vector<PredictionSet>& predictions,
                                   const FrameOntology& ontology,
                                   const CeafRmeOptions& options,
                                   const LengthBins& bins);

// Fixed-precision decimal rendering (printf %.Nf), shared by tables,
// summaries, and the chart renderer so outputs are byte-stable.
std::string format_fixed(double value, int digits);

// Standalone vector-graphic line chart of one series over categorical x
// labels; y is clamped to [0, 1]. Missing values leave gaps.
std::string svg_line_chart(const std::string& title,
                           const std::vector<std::string>& x_labels,
                           const std::vector<std::optional<double>>& values,
                           const std::string& y_label);

}  // namespace crossdoc
