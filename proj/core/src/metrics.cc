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

#include "hiereval/metrics.h"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "hiereval/error.h"

namespace hiereval {
namespace {

void ValidateLabels(const LabelSet& labels, const Taxonomy& taxonomy,
                    const std::string& example_id) {
  for (NodeIndex n : labels) {
    if (n < 0 || static_cast<std::size_t>(n) >= taxonomy.size() ||
        n == taxonomy.root()) {
      throw Error(ErrorCode::kUnknownLabel,
                  "example '" + example_id + "' holds label index " +
                      std::to_string(n) + " outside the taxonomy");
    }
  }
}

void ValidateData(Examples data, const Taxonomy& taxonomy) {
  for (const EvaluatedExample& e : data) {
    ValidateLabels(e.truth, taxonomy, e.example_id);
    ValidateLabels(e.predicted, taxonomy, e.example_id);
  }
}

// Labels plus their ancestors, sorted.
std::vector<NodeIndex> Augment(const LabelSet& labels,
                               const Taxonomy& taxonomy, bool include_root) {
  std::vector<NodeIndex> out(labels.begin(), labels.end());
  for (NodeIndex n : labels) {
    for (NodeIndex p = taxonomy.parent(n); p != kNoNode;
         p = taxonomy.parent(p)) {
      if (p == taxonomy.root() && !include_root) break;
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t IntersectionSize(std::span<const NodeIndex> a,
                             std::span<const NodeIndex> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Sum over x in `from` of max(0, cap - distance(x, to)).
std::int64_t CreditNumerator(const LabelSet& from, const LabelSet& to,
                             const Taxonomy& taxonomy, int cap) {
  std::int64_t total = 0;
  for (NodeIndex x : from) {
    int best = std::numeric_limits<int>::max();
    for (NodeIndex y : to) {
      best = std::min(best, taxonomy.distance(x, y));
      if (best == 0) break;
    }
    if (best < cap) total += cap - best;
  }
  return total;
}

// `slot` maps a label to its counter index (or throws).
template <typename SlotFn>
double MacroF1(Examples data, std::size_t n_slots, SlotFn slot) {
  struct Counts {
    std::int64_t tp = 0, fp = 0, fn = 0;
  };
  std::vector<Counts> counts(n_slots);
  for (const EvaluatedExample& e : data) {
    for (NodeIndex p : e.predicted) {
      Counts& c = counts[slot(p, e.example_id)];
      if (e.truth.contains(p)) {
        ++c.tp;
      } else {
        ++c.fp;
      }
    }
    for (NodeIndex t : e.truth) {
      Counts& c = counts[slot(t, e.example_id)];
      if (!e.predicted.contains(t)) ++c.fn;
    }
  }
  double sum = 0.0;
  std::size_t active = 0;
  for (const Counts& c : counts) {
    const std::int64_t denom = 2 * c.tp + c.fp + c.fn;
    if (denom == 0) continue;
    sum += static_cast<double>(2 * c.tp) / static_cast<double>(denom);
    ++active;
  }
  return active == 0 ? 0.0 : sum / static_cast<double>(active);
}

}  // namespace

LabelSet::LabelSet(std::vector<NodeIndex> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

bool LabelSet::contains(NodeIndex n) const {
  return std::binary_search(labels_.begin(), labels_.end(), n);
}

LabelSet BindLabels(const Taxonomy& taxonomy,
                    std::span<const std::string> ids) {
  std::vector<NodeIndex> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) {
    auto n = taxonomy.find(id);
    if (!n) {
      throw Error(ErrorCode::kUnknownLabel,
                  "label '" + id + "' is not in the taxonomy");
    }
    if (*n == taxonomy.root()) {
      throw Error(ErrorCode::kUnknownLabel,
                  "the root '" + id + "' cannot be used as a label");
    }
    out.push_back(*n);
  }
  return LabelSet(std::move(out));
}

std::vector<std::string> LabelIds(const Taxonomy& taxonomy,
                                  const LabelSet& labels) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (NodeIndex n : labels) out.push_back(taxonomy.id(n));
  std::sort(out.begin(), out.end());
  return out;
}

int MetricConfig::ResolvedDistanceCap(const Taxonomy& taxonomy) const {
  if (distance_cap.has_value()) {
    if (*distance_cap < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "distance cap must be at least 1, got " +
                      std::to_string(*distance_cap));
    }
    return *distance_cap;
  }
  return std::max(1, 2 * taxonomy.height());
}

double FlatMacroF1(Examples data, std::span<const NodeIndex> label_universe) {
  std::vector<NodeIndex> universe(label_universe.begin(), label_universe.end());
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()),
                 universe.end());
  return MacroF1(data, universe.size(), [&](NodeIndex n,
                                            const std::string& example_id) {
    auto it = std::lower_bound(universe.begin(), universe.end(), n);
    if (it == universe.end() || *it != n) {
      throw Error(ErrorCode::kUnknownLabel,
                  "example '" + example_id + "' holds label index " +
                      std::to_string(n) + " outside the label universe");
    }
    return static_cast<std::size_t>(it - universe.begin());
  });
}

double FlatMacroF1(Examples data, const Taxonomy& taxonomy) {
  ValidateData(data, taxonomy);
  return MacroF1(data, taxonomy.size(), [](NodeIndex n, const std::string&) {
    return static_cast<std::size_t>(n);
  });
}

double Hos(Examples data, const Taxonomy& taxonomy,
           const MetricConfig& config) {
  ValidateData(data, taxonomy);
  const bool with_root = config.include_root_in_augmentation;
  if (config.hos_aggregation == HosAggregation::kMicro) {
    std::uint64_t overlap = 0, predicted = 0, truth = 0;
    for (const EvaluatedExample& e : data) {
      const auto aug_t = Augment(e.truth, taxonomy, with_root);
      const auto aug_p = Augment(e.predicted, taxonomy, with_root);
      overlap += IntersectionSize(aug_t, aug_p);
      predicted += aug_p.size();
      truth += aug_t.size();
    }
    // Harmonic mean of overlap/predicted and overlap/truth.
    if (overlap == 0) return 0.0;
    return static_cast<double>(2 * overlap) /
           static_cast<double>(predicted + truth);
  }
  if (data.empty()) return 0.0;
  double sum = 0.0;
  for (const EvaluatedExample& e : data) {
    const auto aug_t = Augment(e.truth, taxonomy, with_root);
    const auto aug_p = Augment(e.predicted, taxonomy, with_root);
    if (aug_t.empty() && aug_p.empty()) {
      sum += 1.0;
    } else if (!aug_t.empty() && !aug_p.empty()) {
      const std::size_t overlap = IntersectionSize(aug_t, aug_p);
      sum += static_cast<double>(2 * overlap) /
             static_cast<double>(aug_t.size() + aug_p.size());
    }
  }
  return sum / static_cast<double>(data.size());
}

double Hds(Examples data, const Taxonomy& taxonomy,
           const MetricConfig& config) {
  ValidateData(data, taxonomy);
  const int cap = config.ResolvedDistanceCap(taxonomy);
  if (data.empty()) return 0.0;
  double sum = 0.0;
  for (const EvaluatedExample& e : data) {
    if (e.truth.empty() && e.predicted.empty()) {
      sum += 1.0;
      continue;
    }
    if (e.truth.empty() || e.predicted.empty()) continue;
    // precision = a / (cap * m), recall = b / (cap * n); the harmonic mean
    // reduces to 2ab / (cap * (a*n + b*m)), evaluated with one rounding.
    const std::int64_t a = CreditNumerator(e.predicted, e.truth, taxonomy, cap);
    const std::int64_t b = CreditNumerator(e.truth, e.predicted, taxonomy, cap);
    if (a == 0 || b == 0) continue;
    const auto m = static_cast<std::int64_t>(e.predicted.size());
    const auto n = static_cast<std::int64_t>(e.truth.size());
    const double num = 2.0 * static_cast<double>(a) * static_cast<double>(b);
    const double den = static_cast<double>(cap) *
                       static_cast<double>(a * n + b * m);
    sum += num / den;
  }
  return sum / static_cast<double>(data.size());
}

bool CaeFlag(const LabelSet& truth, const LabelSet& predicted,
             const Taxonomy& taxonomy) {
  if (truth.empty() || predicted.empty()) return false;
  ValidateLabels(truth, taxonomy, "<cae>");
  ValidateLabels(predicted, taxonomy, "<cae>");
  std::vector<NodeIndex> truth_branches;
  truth_branches.reserve(truth.size());
  for (NodeIndex t : truth) truth_branches.push_back(taxonomy.branch_of(t));
  std::sort(truth_branches.begin(), truth_branches.end());
  for (NodeIndex p : predicted) {
    if (std::binary_search(truth_branches.begin(), truth_branches.end(),
                           taxonomy.branch_of(p))) {
      return false;
    }
  }
  return true;
}

double CaeRate(Examples data, const Taxonomy& taxonomy,
               const MetricConfig& config) {
  std::size_t flagged = 0;
  std::size_t denominator = 0;
  for (const EvaluatedExample& e : data) {
    if (config.cae_denominator == CaeDenominator::kAllExamples ||
        !e.truth.empty()) {
      ++denominator;
    }
    if (CaeFlag(e.truth, e.predicted, taxonomy)) ++flagged;
  }
  if (denominator == 0) return 0.0;
  return static_cast<double>(flagged) / static_cast<double>(denominator);
}

MetricReport Evaluate(Examples data, const Taxonomy& taxonomy,
                      const MetricConfig& config) {
  if (data.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no examples to evaluate");
  }
  MetricReport report;
  report.f1 = FlatMacroF1(data, taxonomy);
  report.hds = Hds(data, taxonomy, config);
  report.hos = Hos(data, taxonomy, config);
  report.cae_rate = CaeRate(data, taxonomy, config);
  report.n_examples = data.size();
  return report;
}

}  // namespace hiereval
