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

#include "hiereval/report.h"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "nlohmann/json.hpp"

namespace hiereval {
namespace {

using ordered_json = nlohmann::ordered_json;

double Percent(double fraction) {
  return std::round(fraction * 10000.0) / 100.0;
}

ordered_json IntervalJson(const std::optional<Interval>& ci, bool percent) {
  if (!ci.has_value()) return nullptr;
  if (percent) return ordered_json::array({Percent(ci->low), Percent(ci->high)});
  return ordered_json::array({ci->low, ci->high});
}

ordered_json MetricConfigJson(const MetricConfig& c) {
  ordered_json j;
  j["distance_cap"] = c.distance_cap.has_value()
                          ? ordered_json(*c.distance_cap)
                          : ordered_json(nullptr);
  j["hos_aggregation"] =
      c.hos_aggregation == HosAggregation::kMicro ? "micro" : "macro";
  j["include_root_in_augmentation"] = c.include_root_in_augmentation;
  j["cae_denominator"] = c.cae_denominator == CaeDenominator::kAllExamples
                             ? "all"
                             : "truth-nonempty";
  return j;
}

ordered_json PolicyJson(const ThresholdPolicy& p) {
  ordered_json j;
  j["mode"] = std::string(ThresholdModeName(p.mode));
  j["threshold"] = p.threshold;
  j["cae_limit"] =
      p.cae_limit.has_value() ? ordered_json(*p.cae_limit) : ordered_json(nullptr);
  j["infeasible"] = p.infeasible;
  return j;
}

ordered_json ManifestJson(const RunManifest& m) {
  ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["subcommand"] = m.subcommand;
  ordered_json inputs = ordered_json::object();
  for (const auto& [role, path] : m.inputs) inputs[role] = path;
  j["inputs"] = inputs;
  if (m.metric_config) j["metric_config"] = MetricConfigJson(*m.metric_config);
  if (m.bootstrap) {
    j["bootstrap"] = {{"n_resamples", m.bootstrap->n_resamples},
                      {"confidence", m.bootstrap->confidence},
                      {"seed", m.bootstrap->seed}};
  }
  if (m.grid) j["grid"] = {{"max_candidates", m.grid->max_candidates}};
  if (!m.options.empty()) {
    ordered_json options = ordered_json::object();
    for (const auto& [key, value] : m.options) options[key] = value;
    j["options"] = options;
  }
  j["seed"] = m.seed.has_value() ? ordered_json(*m.seed) : ordered_json(nullptr);
  return j;
}

ordered_json SweepPointJson(const SweepPoint& p) {
  return {{"threshold", p.threshold},
          {"f1", p.f1},
          {"cae", p.cae},
          {"hos", p.hos},
          {"hds", p.hds}};
}

std::string Dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string RenderManifestJson(const RunManifest& manifest) {
  return Dump(ManifestJson(manifest));
}

std::string RenderReportJson(const MetricReport& report,
                             const RunManifest& manifest,
                             const std::optional<ThresholdPolicy>& policy) {
  ordered_json j;
  j["manifest"] = ManifestJson(manifest);
  j["n_examples"] = report.n_examples;
  j["metrics"] = {{"f1", report.f1},
                  {"hds", report.hds},
                  {"hos", report.hos},
                  {"cae_rate", report.cae_rate}};
  const bool has_ci = report.f1_ci || report.hds_ci || report.hos_ci ||
                      report.cae_ci;
  if (has_ci) {
    j["intervals"] = {{"f1", IntervalJson(report.f1_ci, false)},
                      {"hds", IntervalJson(report.hds_ci, false)},
                      {"hos", IntervalJson(report.hos_ci, false)},
                      {"cae_rate", IntervalJson(report.cae_ci, false)}};
  } else {
    j["intervals"] = nullptr;
  }
  ordered_json percent = {{"f1", Percent(report.f1)},
                          {"hds", Percent(report.hds)},
                          {"hos", Percent(report.hos)},
                          {"cae_rate", Percent(report.cae_rate)}};
  if (has_ci) {
    percent["intervals"] = {{"f1", IntervalJson(report.f1_ci, true)},
                            {"hds", IntervalJson(report.hds_ci, true)},
                            {"hos", IntervalJson(report.hos_ci, true)},
                            {"cae_rate", IntervalJson(report.cae_ci, true)}};
  }
  j["percent"] = percent;
  j["policy"] = policy.has_value() ? PolicyJson(*policy) : ordered_json(nullptr);
  return Dump(j);
}

std::string RenderReportMarkdown(const MetricReport& report) {
  auto cell = [](double v, const std::optional<Interval>& ci) {
    char buf[96];
    if (ci.has_value()) {
      std::snprintf(buf, sizeof(buf), "%.2f (%.2f, %.2f)", Percent(v),
                    Percent(ci->low), Percent(ci->high));
    } else {
      std::snprintf(buf, sizeof(buf), "%.2f", Percent(v));
    }
    return std::string(buf);
  };
  std::string out = "| n | F1 | HDS | HOS | CAE |\n|---|---|---|---|---|\n";
  out += "| " + std::to_string(report.n_examples) + " | " +
         cell(report.f1, report.f1_ci) + " | " +
         cell(report.hds, report.hds_ci) + " | " +
         cell(report.hos, report.hos_ci) + " | " +
         cell(report.cae_rate, report.cae_ci) + " |\n";
  return out;
}

std::string RenderPolicyJson(const Selection& selection,
                             const RunManifest& manifest) {
  ordered_json j = PolicyJson(selection.policy);
  j["selected"] = SweepPointJson(selection.point);
  j["manifest"] = ManifestJson(manifest);
  return Dump(j);
}

std::string RenderSweepCsv(std::span<const SweepPoint> sweep) {
  std::string out = "threshold,f1,cae,hos,hds\n";
  for (const SweepPoint& p : sweep) {
    out += FormatDouble(p.threshold) + "," + FormatDouble(p.f1) + "," +
           FormatDouble(p.cae) + "," + FormatDouble(p.hos) + "," +
           FormatDouble(p.hds) + "\n";
  }
  return out;
}

std::string RenderChainsNdjson(std::span<const ChainSet> chains) {
  std::string out;
  for (const ChainSet& c : chains) {
    ordered_json j;
    j["leaf"] = c.leaf;
    j["positive"] = c.positive;
    ordered_json negatives = ordered_json::array();
    for (const NegativeChain& n : c.negatives) {
      negatives.push_back(
          {{"level", n.level}, {"sibling", n.sibling}, {"chain", n.chain}});
    }
    j["negatives"] = negatives;
    out += j.dump() + "\n";
  }
  return out;
}

std::string RenderTauSummaryJson(const TauSummary& summary,
                                 const RunManifest& manifest) {
  ordered_json j;
  j["manifest"] = ManifestJson(manifest);
  j["mean"] = summary.mean ? ordered_json(*summary.mean) : ordered_json(nullptr);
  j["sd"] = summary.sd ? ordered_json(*summary.sd) : ordered_json(nullptr);
  j["n_sequences"] = summary.n_sequences;
  j["n_skipped"] = summary.n_skipped;
  return Dump(j);
}

std::string RenderScoresCsv(const ScoreMatrix& m, const Taxonomy& taxonomy) {
  std::string out = "example_id";
  for (NodeIndex l : m.labels) out += "," + taxonomy.id(l);
  out += "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += m.example_ids[i];
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out += "," + FormatDouble(m.at(i, j));
    }
    out += "\n";
  }
  return out;
}

}  // namespace hiereval
