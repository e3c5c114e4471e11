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

#include "hiereval/thresholding.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "hiereval/error.h"
#include "parallel.h"

namespace hiereval {
namespace {

// a is strictly better than b under "higher F1, lower CAE, lower threshold".
bool BetterByF1(const SweepPoint& a, const SweepPoint& b) {
  if (a.f1 != b.f1) return a.f1 > b.f1;
  if (a.cae != b.cae) return a.cae < b.cae;
  return a.threshold < b.threshold;
}

bool BetterByCae(const SweepPoint& a, const SweepPoint& b) {
  if (a.cae != b.cae) return a.cae < b.cae;
  if (a.f1 != b.f1) return a.f1 > b.f1;
  return a.threshold < b.threshold;
}

double Below(double lo) {
  const double v = lo - 1.0;
  return v < lo ? v : std::nextafter(lo, -std::numeric_limits<double>::max());
}

double Above(double hi) {
  const double v = hi + 1.0;
  return v > hi ? v : std::nextafter(hi, std::numeric_limits<double>::max());
}

}  // namespace

ScoreMatrix MakeScoreMatrix(const Taxonomy& taxonomy,
                            std::vector<std::string> example_ids,
                            std::span<const std::string> label_ids,
                            std::vector<double> scores) {
  ScoreMatrix m;
  std::unordered_set<NodeIndex> seen_labels;
  for (const std::string& id : label_ids) {
    auto n = taxonomy.find(id);
    if (!n || *n == taxonomy.root()) {
      throw Error(ErrorCode::kUnknownLabel,
                  "score column '" + id + "' is not a non-root taxonomy node");
    }
    if (!seen_labels.insert(*n).second) {
      throw Error(ErrorCode::kSchema, "duplicate score column '" + id + "'");
    }
    m.labels.push_back(*n);
  }
  std::unordered_set<std::string> seen_examples;
  for (const std::string& id : example_ids) {
    if (!seen_examples.insert(id).second) {
      throw Error(ErrorCode::kDuplicateExample,
                  "duplicate example '" + id + "' in scores");
    }
  }
  if (scores.size() != example_ids.size() * label_ids.size()) {
    throw Error(ErrorCode::kSchema,
                "score table has " + std::to_string(scores.size()) +
                    " cells, expected " +
                    std::to_string(example_ids.size() * label_ids.size()));
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) {
      const std::size_t row = i / label_ids.size();
      throw Error(ErrorCode::kNonFiniteScore,
                  "non-finite score for example '" + example_ids[row] +
                      "', label '" + label_ids[i % label_ids.size()] + "'");
    }
  }
  m.example_ids = std::move(example_ids);
  m.scores = std::move(scores);
  return m;
}

std::vector<LabelSet> ApplyThreshold(const ScoreMatrix& m, double threshold) {
  std::vector<LabelSet> out;
  out.reserve(m.rows());
  std::vector<NodeIndex> picked;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    picked.clear();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.at(i, j) >= threshold) picked.push_back(m.labels[j]);
    }
    out.emplace_back(picked);
  }
  return out;
}

std::vector<EvaluatedExample> JoinTruth(const ScoreMatrix& m,
                                        const TruthTable& truth,
                                        std::vector<LabelSet> predicted) {
  std::vector<EvaluatedExample> out;
  out.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto it = truth.find(m.example_ids[i]);
    if (it == truth.end()) {
      throw Error(ErrorCode::kMissingExample,
                  "example '" + m.example_ids[i] + "' has no ground truth");
    }
    out.push_back({m.example_ids[i], it->second,
                   i < predicted.size() ? std::move(predicted[i]) : LabelSet{}});
  }
  return out;
}

std::vector<double> CandidateThresholds(const ScoreMatrix& m,
                                        const SweepGrid& grid) {
  if (m.scores.empty()) {
    throw Error(ErrorCode::kEmptyScoreMatrix, "score matrix has no cells");
  }
  if (grid.max_candidates < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "a sweep needs at least 2 candidate thresholds");
  }
  std::vector<double> distinct = m.scores;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());

  std::vector<double> all;
  all.reserve(distinct.size() + 1);
  all.push_back(Below(distinct.front()));
  for (std::size_t k = 1; k < distinct.size(); ++k) {
    const double lo = distinct[k - 1];
    const double hi = distinct[k];
    double mid = std::midpoint(lo, hi);
    // Adjacent doubles: any value in (lo, hi] selects the same labels.
    if (mid <= lo) mid = hi;
    all.push_back(mid);
  }
  all.push_back(Above(distinct.back()));

  if (all.size() <= grid.max_candidates) return all;
  std::vector<double> thinned;
  thinned.reserve(grid.max_candidates);
  const std::size_t last = all.size() - 1;
  const std::size_t slots = grid.max_candidates - 1;
  for (std::size_t i = 0; i <= slots; ++i) {
    // Rounded i * last / slots in exact integer arithmetic.
    const std::size_t idx = (i * last * 2 + slots) / (slots * 2);
    thinned.push_back(all[idx]);
  }
  return thinned;
}

std::vector<SweepPoint> Sweep(const ScoreMatrix& m, const TruthTable& truth,
                              const Taxonomy& taxonomy,
                              const MetricConfig& config,
                              const SweepGrid& grid, unsigned workers) {
  const std::vector<double> candidates = CandidateThresholds(m, grid);
  const std::vector<EvaluatedExample> base = JoinTruth(m, truth, {});
  // Resolve once so a bad cap fails before any work is scheduled.
  config.ResolvedDistanceCap(taxonomy);

  std::vector<SweepPoint> points(candidates.size());
  internal::ParallelFor(candidates.size(), workers, [&](std::size_t k) {
    std::vector<EvaluatedExample> data = base;
    std::vector<LabelSet> predicted = ApplyThreshold(m, candidates[k]);
    for (std::size_t i = 0; i < data.size(); ++i) {
      data[i].predicted = std::move(predicted[i]);
    }
    const MetricReport r = Evaluate(data, taxonomy, config);
    points[k] = {candidates[k], r.f1, r.cae_rate, r.hos, r.hds};
  });
  return points;
}

std::string_view ThresholdModeName(ThresholdMode mode) {
  return mode == ThresholdMode::kPerformance ? "performance"
                                             : "risk_constrained";
}

ThresholdMode ParseThresholdMode(std::string_view name) {
  if (name == "performance") return ThresholdMode::kPerformance;
  if (name == "risk_constrained" || name == "risk") {
    return ThresholdMode::kRiskConstrained;
  }
  throw Error(ErrorCode::kSchema,
              "unknown threshold mode '" + std::string(name) + "'");
}

Selection SelectPerformance(std::span<const SweepPoint> sweep) {
  if (sweep.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot select from empty sweep");
  }
  const SweepPoint* best = &sweep.front();
  for (const SweepPoint& p : sweep) {
    if (BetterByF1(p, *best)) best = &p;
  }
  return {{ThresholdMode::kPerformance, best->threshold, std::nullopt, false},
          *best};
}

Selection SelectRiskConstrained(std::span<const SweepPoint> sweep,
                                double cae_limit) {
  if (sweep.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot select from empty sweep");
  }
  if (!(cae_limit >= 0.0 && cae_limit <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "CAE limit must lie in [0, 1], got " +
                    std::to_string(cae_limit));
  }
  const SweepPoint* best = nullptr;
  for (const SweepPoint& p : sweep) {
    if (p.cae > cae_limit) continue;
    if (best == nullptr || BetterByF1(p, *best)) best = &p;
  }
  bool infeasible = false;
  if (best == nullptr) {
    infeasible = true;
    best = &sweep.front();
    for (const SweepPoint& p : sweep) {
      if (BetterByCae(p, *best)) best = &p;
    }
  }
  return {{ThresholdMode::kRiskConstrained, best->threshold, cae_limit,
           infeasible},
          *best};
}

}  // namespace hiereval
