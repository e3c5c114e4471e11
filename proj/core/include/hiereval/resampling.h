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

#ifndef HIEREVAL_RESAMPLING_H_
#define HIEREVAL_RESAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "hiereval/metrics.h"

namespace hiereval {

struct BootstrapConfig {
  std::size_t n_resamples = 1000;
  double confidence = 0.95;
  std::uint64_t seed = 0;

  // Throws InvalidArgument unless n_resamples >= 1 and 0 < confidence < 1.
  void Validate() const;
};

// Row indices of resample `resample` over a dataset of n rows.
//
// Draw j is ReduceToRange(PhiloxBits(seed, j, resample), n): the Philox
// counter is (j_lo32, j_hi32, r_lo32, r_hi32), the key (seed_lo32,
// seed_hi32), and output words 1:0 form the 64 bits mapped to [0, n).
std::vector<std::size_t> ResampleIndices(std::uint64_t seed,
                                         std::uint64_t resample,
                                         std::size_t n);

struct BootstrapInterval {
  double low = 0.0;
  double high = 0.0;
  // Metric on the full dataset.
  double point = 0.0;
};

using MetricFn = std::function<double(Examples)>;
using MultiMetricFn = std::function<std::vector<double>(Examples)>;

// Percentile bootstrap. Each of the B resampled datasets is scored, the
// scores are sorted, and the (1 - c)/2 and (1 + c)/2 quantiles are read with
// linear interpolation between order statistics (h = (B - 1) q).
//
// Bit-identical for any `workers` (0 = all hardware threads).
// Throws EmptyDataset.
BootstrapInterval BootstrapCi(Examples data, const MetricFn& metric,
                              const BootstrapConfig& config,
                              unsigned workers = 1);

// Same, for several metrics computed together on each resample.
std::vector<BootstrapInterval> BootstrapCis(Examples data,
                                            const MultiMetricFn& metrics,
                                            const BootstrapConfig& config,
                                            unsigned workers = 1);

// Evaluate() plus intervals for all four metrics.
MetricReport EvaluateWithIntervals(Examples data, const Taxonomy& taxonomy,
                                   const MetricConfig& metric_config,
                                   const BootstrapConfig& config,
                                   unsigned workers = 1);

}  // namespace hiereval

#endif  // HIEREVAL_RESAMPLING_H_
