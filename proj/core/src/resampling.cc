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

#include "hiereval/resampling.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hiereval/error.h"
#include "hiereval/philox.h"
#include "parallel.h"

namespace hiereval {
namespace {

double Quantile(const std::vector<double>& sorted, double q) {
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

void BootstrapConfig::Validate() const {
  if (n_resamples < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "bootstrap needs at least one resample");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "confidence must lie strictly between 0 and 1, got " +
                    std::to_string(confidence));
  }
}

std::vector<std::size_t> ResampleIndices(std::uint64_t seed,
                                         std::uint64_t resample,
                                         std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = static_cast<std::size_t>(
        ReduceToRange(PhiloxBits(seed, j, resample), n));
  }
  return out;
}

std::vector<BootstrapInterval> BootstrapCis(Examples data,
                                            const MultiMetricFn& metrics,
                                            const BootstrapConfig& config,
                                            unsigned workers) {
  config.Validate();
  if (data.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "cannot bootstrap an empty dataset");
  }
  const std::vector<double> point = metrics(data);
  const std::size_t k = point.size();
  const std::size_t b = config.n_resamples;

  // values[m * b + r] = metric m on resample r.
  std::vector<double> values(k * b);
  internal::ParallelFor(b, workers, [&](std::size_t r) {
    std::vector<EvaluatedExample> sample;
    sample.reserve(data.size());
    for (std::size_t i : ResampleIndices(config.seed, r, data.size())) {
      sample.push_back(data[i]);
    }
    const std::vector<double> v = metrics(sample);
    if (v.size() != k) {
      throw Error(ErrorCode::kInvalidArgument,
                  "metric function changed its output arity");
    }
    for (std::size_t m = 0; m < k; ++m) values[m * b + r] = v[m];
  });

  const double alpha = (1.0 - config.confidence) / 2.0;
  std::vector<BootstrapInterval> out(k);
  std::vector<double> column(b);
  for (std::size_t m = 0; m < k; ++m) {
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(m * b), b,
                column.begin());
    std::sort(column.begin(), column.end());
    out[m] = {Quantile(column, alpha), Quantile(column, 1.0 - alpha),
              point[m]};
  }
  return out;
}

BootstrapInterval BootstrapCi(Examples data, const MetricFn& metric,
                              const BootstrapConfig& config,
                              unsigned workers) {
  return BootstrapCis(
      data, [&](Examples d) { return std::vector<double>{metric(d)}; },
      config, workers)[0];
}

MetricReport EvaluateWithIntervals(Examples data, const Taxonomy& taxonomy,
                                   const MetricConfig& metric_config,
                                   const BootstrapConfig& config,
                                   unsigned workers) {
  MetricReport report = Evaluate(data, taxonomy, metric_config);
  const auto cis = BootstrapCis(
      data,
      [&](Examples d) {
        const MetricReport r = Evaluate(d, taxonomy, metric_config);
        return std::vector<double>{r.f1, r.hds, r.hos, r.cae_rate};
      },
      config, workers);
  report.f1_ci = Interval{cis[0].low, cis[0].high};
  report.hds_ci = Interval{cis[1].low, cis[1].high};
  report.hos_ci = Interval{cis[2].low, cis[2].high};
  report.cae_ci = Interval{cis[3].low, cis[3].high};
  return report;
}

}  // namespace hiereval
