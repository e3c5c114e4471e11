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

#ifndef HIEREVAL_METRICS_H_
#define HIEREVAL_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hiereval/taxonomy.h"

namespace hiereval {

// A set of non-root taxonomy nodes, kept sorted and duplicate-free.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<NodeIndex> labels);

  std::span<const NodeIndex> labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  bool contains(NodeIndex n) const;
  auto begin() const { return labels_.begin(); }
  auto end() const { return labels_.end(); }

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<NodeIndex> labels_;
};

// Resolves label ids against `taxonomy`. Unknown ids and the root id throw
// UnknownLabel. Duplicates collapse.
LabelSet BindLabels(const Taxonomy& taxonomy,
                    std::span<const std::string> ids);
std::vector<std::string> LabelIds(const Taxonomy& taxonomy,
                                  const LabelSet& labels);

struct EvaluatedExample {
  std::string example_id;
  LabelSet truth;
  LabelSet predicted;
};

enum class HosAggregation { kMicro, kMacro };
enum class CaeDenominator { kAllExamples, kTruthNonEmpty };

struct MetricConfig {
  // HDS normalization constant D; unset means 2 * height (the diameter bound).
  std::optional<int> distance_cap;
  HosAggregation hos_aggregation = HosAggregation::kMicro;
  bool include_root_in_augmentation = false;
  CaeDenominator cae_denominator = CaeDenominator::kAllExamples;

  // Throws InvalidArgument when an explicit cap is below 1.
  int ResolvedDistanceCap(const Taxonomy& taxonomy) const;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Fractions in [0, 1]. Intervals are filled in by the bootstrap.
struct MetricReport {
  double f1 = 0.0;
  double hds = 0.0;
  double hos = 0.0;
  double cae_rate = 0.0;
  std::optional<Interval> f1_ci;
  std::optional<Interval> hds_ci;
  std::optional<Interval> hos_ci;
  std::optional<Interval> cae_ci;
  std::size_t n_examples = 0;
};

using Examples = std::span<const EvaluatedExample>;

// Per-label F1 = 2TP / (2TP + FP + FN), averaged over labels that occur in
// at least one truth or prediction set. Returns 0 when no label occurs.
// Labels outside `label_universe` throw UnknownLabel.
double FlatMacroF1(Examples data, std::span<const NodeIndex> label_universe);
// Universe = every non-root node of `taxonomy`.
double FlatMacroF1(Examples data, const Taxonomy& taxonomy);

// Hierarchical overlap: sets are closed under ancestors before computing
// precision and recall.
double Hos(Examples data, const Taxonomy& taxonomy,
           const MetricConfig& config = {});

// Hierarchical distance score. A label x earns credit
// max(0, 1 - d(x, S) / D) against the opposite set S, where d(x, S) is the
// tree distance to the nearest member of S. Per example the harmonic mean of
// mean predicted credit and mean truth credit is taken (1 when both sets are
// empty, 0 when exactly one is); examples are averaged.
double Hds(Examples data, const Taxonomy& taxonomy,
           const MetricConfig& config = {});

// Catastrophic abstraction error: both sets non-empty and no predicted label
// shares a branch with any true label.
bool CaeFlag(const LabelSet& truth, const LabelSet& predicted,
             const Taxonomy& taxonomy);
double CaeRate(Examples data, const Taxonomy& taxonomy,
               const MetricConfig& config = {});

// All four metrics. Throws EmptyDataset on empty input.
MetricReport Evaluate(Examples data, const Taxonomy& taxonomy,
                      const MetricConfig& config = {});

}  // namespace hiereval

#endif  // HIEREVAL_METRICS_H_
