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

#ifndef HIEREVAL_REPORT_H_
#define HIEREVAL_REPORT_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hiereval/alignment.h"
#include "hiereval/metrics.h"
#include "hiereval/resampling.h"
#include "hiereval/thresholding.h"

// Writers for every document the toolkit emits. Output is a pure function of
// the arguments: fixed field order, shortest round-trip number formatting,
// no timestamps.
namespace hiereval {

inline constexpr const char* kToolName = "hier-eval";
inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to re-run the command that produced a document.
struct RunManifest {
  std::string subcommand;
  // (role, path) in command-line order, e.g. ("taxonomy", "t0.json").
  std::vector<std::pair<std::string, std::string>> inputs;
  std::optional<MetricConfig> metric_config;
  std::optional<BootstrapConfig> bootstrap;
  std::optional<SweepGrid> grid;
  // Free-form settings such as the chain mode.
  std::vector<std::pair<std::string, std::string>> options;
  std::optional<std::uint64_t> seed;
};

std::string RenderManifestJson(const RunManifest& manifest);

// Metric report with fractional values, an optional [low, high] interval
// block, a "percent" block rounded to 2 decimals, and the applied policy.
std::string RenderReportJson(const MetricReport& report,
                             const RunManifest& manifest,
                             const std::optional<ThresholdPolicy>& policy);
std::string RenderReportMarkdown(const MetricReport& report);

// Policy artifact: mode, threshold, cae_limit, infeasible, then the selected
// sweep point and the manifest.
std::string RenderPolicyJson(const Selection& selection,
                             const RunManifest& manifest);
// "threshold,f1,cae,hos,hds" rows in sweep order.
std::string RenderSweepCsv(std::span<const SweepPoint> sweep);

// One {"leaf", "positive", "negatives"} object per line.
std::string RenderChainsNdjson(std::span<const ChainSet> chains);

std::string RenderTauSummaryJson(const TauSummary& summary,
                                 const RunManifest& manifest);

// Shortest decimal string that round-trips to `value`.
std::string FormatDouble(double value);

// Score CSV as read by ParseScores.
std::string RenderScoresCsv(const ScoreMatrix& m, const Taxonomy& taxonomy);

}  // namespace hiereval

#endif  // HIEREVAL_REPORT_H_
