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

#include "crossdoc/analysis.hpp"

#include <algorithm>
#include <cstdio>

namespace crossdoc {

LengthBins compute_bins(std::vector<long> lengths) {
  if (lengths.size() < 6) {
    throw DomainError("need at least 6 lengths to form 6 bins, got " +
                      std::to_string(lengths.size()));
  }
  std::sort(lengths.begin(), lengths.end());
  const std::size_t n = lengths.size();
  constexpr std::array<std::size_t, 5> kPercentiles = {10, 25, 50, 75, 90};
  LengthBins bins;
  for (std::size_t i = 0; i < kPercentiles.size(); ++i) {
    // nearest rank: the ceil(p*n/100)-th smallest value (1-based)
    const std::size_t rank = (kPercentiles[i] * n + 99) / 100;
    bins.edges[i] = lengths[rank - 1];
  }
  bins.degenerate = bins.edges.front() == bins.edges.back();
  return bins;
}

int bin_index(const LengthBins& bins, long length) {
  for (std::size_t i = 0; i < bins.edges.size(); ++i) {
    if (length < bins.edges[i]) return static_cast<int>(i);
  }
  return static_cast<int>(bins.edges.size());  // top bin, closed above
}

std::vector<BinScore> per_bin_sv(const std::vector<SVExample>& gold,
                                 const std::map<std::string, bool>& predictions,
                                 const LengthBins& bins) {
  std::vector<std::vector<SVExample>> parts(LengthBins::kLabels.size());
  for (const SVExample& ex : gold) {
    if (predictions.count(ex.id) == 0) {
      throw DomainError("no prediction for example \"" + ex.id + "\"");
    }
    parts[bin_index(bins, static_cast<long>(ex.source.size()))].push_back(ex);
  }
  std::vector<BinScore> out;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    BinScore score;
    score.label = LengthBins::kLabels[b];
    score.count = parts[b].size();
    if (!parts[b].empty()) {
      std::map<std::string, bool> subset;
      for (const SVExample& ex : parts[b]) subset[ex.id] = predictions.at(ex.id);
      const SVResult result = score_sv(parts[b], subset);
      score.accuracy = result.accuracy;
      score.prf = result.positive;
    }
    out.push_back(std::move(score));
  }
  return out;
}

std::vector<BinScore> per_bin_ceaf(const std::vector<CDAEExample>& gold,
                                   const std::vector<PredictionSet>& predictions,
                                   const FrameOntology& ontology,
                                   const CeafRmeOptions& options,
                                   const LengthBins& bins) {
  std::vector<std::vector<CDAEExample>> parts(LengthBins::kLabels.size());
  std::map<std::string, int> example_bin;
  for (const CDAEExample& ex : gold) {
    const int b = bin_index(bins, static_cast<long>(ex.source.size()));
    example_bin[ex.id] = b;
    parts[b].push_back(ex);
  }
  std::vector<std::vector<PredictionSet>> part_preds(parts.size());
  for (const PredictionSet& preds : predictions) {
    auto it = example_bin.find(preds.example_id);
    if (it == example_bin.end()) {
      throw DomainError("prediction for unknown example id \"" +
                        preds.example_id + "\"");
    }
    part_preds[it->second].push_back(preds);
  }
  std::vector<BinScore> out;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    BinScore score;
    score.label = LengthBins::kLabels[b];
    score.count = parts[b].size();
    if (!parts[b].empty()) {
      score.prf =
          score_ceaf_rme(parts[b], part_preds[b], ontology, options).prf;
    }
    out.push_back(std::move(score));
  }
  return out;
}

std::string format_fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

std::string svg_line_chart(const std::string& title,
                           const std::vector<std::string>& x_labels,
                           const std::vector<std::optional<double>>& values,
                           const std::string& y_label) {
  if (x_labels.size() != values.size()) {
    throw DomainError("chart labels and values differ in length");
  }
  constexpr int kWidth = 640, kHeight = 400;
  constexpr int kLeft = 64, kRight = 24, kTop = 48, kBottom = 56;
  const int plot_w = kWidth - kLeft - kRight;
  const int plot_h = kHeight - kTop - kBottom;
  const std::size_t n = x_labels.size();

  auto x_at = [&](std::size_t i) {
    return n == 1 ? kLeft + plot_w / 2.0
                  : kLeft + plot_w * (static_cast<double>(i) / (n - 1));
  };
  auto y_at = [&](double v) {
    const double clamped = std::min(1.0, std::max(0.0, v));
    return kTop + plot_h * (1.0 - clamped);
  };
  auto num = [](double v) { return format_fixed(v, 1); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"400\" viewBox=\"0 0 640 400\">\n";
  svg += "  <rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "  <text x=\"320\" y=\"28\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" + title + "</text>\n";
  // axes and horizontal gridlines at 0, 0.25, 0.5, 0.75, 1
  for (int g = 0; g <= 4; ++g) {
    const double v = g / 4.0;
    const std::string y = num(y_at(v));
    svg += "  <line x1=\"" + num(kLeft) + "\" y1=\"" + y + "\" x2=\"" +
           num(kWidth - kRight) + "\" y2=\"" + y +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "  <text x=\"" + num(kLeft - 8) + "\" y=\"" + y +
           "\" text-anchor=\"end\" dominant-baseline=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"11\">" +
           format_fixed(v, 2) + "</text>\n";
  }
  svg += "  <line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
         num(kLeft) + "\" y2=\"" + num(kHeight - kBottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "  <line x1=\"" + num(kLeft) + "\" y1=\"" + num(kHeight - kBottom) +
         "\" x2=\"" + num(kWidth - kRight) + "\" y2=\"" +
         num(kHeight - kBottom) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "  <text x=\"16\" y=\"" + num(kTop + plot_h / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 " +
         num(kTop + plot_h / 2.0) + ")\">" + y_label + "</text>\n";

  // polyline segments between consecutive present values
  std::string points;
  for (std::size_t i = 0; i < n; ++i) {
    if (!values[i]) {
      if (!points.empty()) {
        svg += "  <polyline points=\"" + points +
               "\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\"/>\n";
        points.clear();
      }
      continue;
    }
    if (!points.empty()) points += " ";
    points += num(x_at(i)) + "," + num(y_at(*values[i]));
  }
  if (!points.empty()) {
    svg += "  <polyline points=\"" + points +
           "\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\"/>\n";
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i]) {
      svg += "  <circle cx=\"" + num(x_at(i)) + "\" cy=\"" +
             num(y_at(*values[i])) +
             "\" r=\"3\" fill=\"#1f6fb2\"/>\n";
    }
    svg += "  <text x=\"" + num(x_at(i)) + "\" y=\"" +
           num(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" + x_labels[i] + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace crossdoc
