// Copyright 2026 The hiereval Authors
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

#ifndef HIEREVAL_THRESHOLDING_H_
#define HIEREVAL_THRESHOLDING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hiereval/metrics.h"
#include "hiereval/taxonomy.h"

namespace hiereval {

// Dense example x label table of similarity scores, row-major.
struct ScoreMatrix {
  std::vector<std::string> example_ids;
  std::vector<NodeIndex> labels;
  std::vector<double> scores;

  std::size_t rows() const { return example_ids.size(); }
  std::size_t cols() const { return labels.size(); }
  double at(std::size_t row, std::size_t col) const {
    return scores[row * labels.size() + col];
  }
};

// Builds and checks a matrix: labels must be distinct non-root taxonomy nodes
// (UnknownLabel / SchemaError), example ids distinct (DuplicateExample), every
// cell present (SchemaError) and finite (NonFiniteScore).
ScoreMatrix MakeScoreMatrix(const Taxonomy& taxonomy,
                            std::vector<std::string> example_ids,
                            std::span<const std::string> label_ids,
                            std::vector<double> scores);

using TruthTable = std::unordered_map<std::string, LabelSet>;

// Label j is predicted for row i iff score(i, j) >= threshold.
std::vector<LabelSet> ApplyThreshold(const ScoreMatrix& m, double threshold);

// Pairs each matrix row with its truth; throws MissingExample.
std::vector<EvaluatedExample> JoinTruth(const ScoreMatrix& m,
                                        const TruthTable& truth,
                                        std::vector<LabelSet> predicted);

struct SweepGrid {
  // Upper bound on evaluated thresholds; at least 2.
  std::size_t max_candidates = 4096;
};

// Sorted candidate thresholds: one below the minimum score, the midpoint of
// every pair of consecutive distinct scores, one above the maximum. Longer
// lists are thinned to `max_candidates` evenly spaced entries that keep both
// ends.
std::vector<double> CandidateThresholds(const ScoreMatrix& m,
                                        const SweepGrid& grid = {});

struct SweepPoint {
  double threshold = 0.0;
  double f1 = 0.0;
  double cae = 0.0;
  double hos = 0.0;
  double hds = 0.0;
};

// Evaluates every candidate threshold; points ascend by threshold.
// `workers` = 0 uses every hardware thread. Output is identical for any
// worker count.
std::vector<SweepPoint> Sweep(const ScoreMatrix& m, const TruthTable& truth,
                              const Taxonomy& taxonomy,
                              const MetricConfig& config = {},
                              const SweepGrid& grid = {},
                              unsigned workers = 1);

enum class ThresholdMode { kPerformance, kRiskConstrained };

std::string_view ThresholdModeName(ThresholdMode mode);
// Accepts "performance", "risk_constrained" and the CLI alias "risk".
ThresholdMode ParseThresholdMode(std::string_view name);

struct ThresholdPolicy {
  ThresholdMode mode = ThresholdMode::kPerformance;
  double threshold = 0.0;
  std::optional<double> cae_limit;
  // Risk mode only: no sweep point met the limit, so the minimum-CAE point
  // was chosen instead.
  bool infeasible = false;
};

struct Selection {
  ThresholdPolicy policy;
  SweepPoint point;
};

// Highest F1; ties go to lower CAE, then lower threshold.
Selection SelectPerformance(std::span<const SweepPoint> sweep);

// Highest F1 among points with CAE <= cae_limit, same tie-break. When no
// point qualifies, returns the minimum-CAE point (ties: higher F1, then lower
// threshold) with `infeasible` set.
Selection SelectRiskConstrained(std::span<const SweepPoint> sweep,
                                double cae_limit = 0.01);

}  // namespace hiereval

#endif  // HIEREVAL_THRESHOLDING_H_
