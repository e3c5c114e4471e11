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

#include "cli.h"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hiereval/alignment.h"
#include "hiereval/error.h"
#include "hiereval/io.h"
#include "hiereval/metrics.h"
#include "hiereval/report.h"
#include "hiereval/resampling.h"
#include "hiereval/taxonomy.h"
#include "hiereval/thresholding.h"

namespace hiereval::cli {
namespace {

struct CommonFlags {
  std::string taxonomy;
  std::string virtual_root;
  std::string output;
};

struct MetricFlags {
  std::optional<int> distance_cap;
  std::string hos_agg = "micro";
  std::string cae_denominator = "all";
  bool include_root = false;
};

void AddTaxonomyFlags(CLI::App* app, CommonFlags& f) {
  app->add_option("--taxonomy", f.taxonomy, "Taxonomy JSON document")
      ->required();
  app->add_option("--virtual-root", f.virtual_root,
                  "Insert a root with this id when several nodes lack a "
                  "parent");
}

void AddMetricFlags(CLI::App* app, MetricFlags& f) {
  app->add_option("--distance-cap", f.distance_cap,
                  "HDS normalization D (default: 2 * taxonomy height)");
  app->add_option("--hos-agg", f.hos_agg, "HOS aggregation")
      ->check(CLI::IsMember({"micro", "macro"}));
  app->add_option("--cae-denominator", f.cae_denominator,
                  "Examples counted in the CAE rate denominator")
      ->check(CLI::IsMember({"all", "truth-nonempty"}));
  app->add_flag("--include-root", f.include_root,
                "Keep the root in HOS ancestor augmentation");
}

MetricConfig ToMetricConfig(const MetricFlags& f) {
  MetricConfig c;
  c.distance_cap = f.distance_cap;
  c.hos_aggregation =
      f.hos_agg == "macro" ? HosAggregation::kMacro : HosAggregation::kMicro;
  c.cae_denominator = f.cae_denominator == "truth-nonempty"
                          ? CaeDenominator::kTruthNonEmpty
                          : CaeDenominator::kAllExamples;
  c.include_root_in_augmentation = f.include_root;
  return c;
}

Taxonomy LoadTaxonomyFromFlags(const CommonFlags& f) {
  LoadOptions options;
  if (!f.virtual_root.empty()) options.virtual_root = f.virtual_root;
  return LoadTaxonomyFile(f.taxonomy, options);
}

void WriteDocument(const std::string& path, const std::string& text,
                   std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
}

RunManifest BaseManifest(const std::string& subcommand,
                         const CommonFlags& common) {
  RunManifest m;
  m.subcommand = subcommand;
  m.inputs.emplace_back("taxonomy", common.taxonomy);
  if (!common.virtual_root.empty()) {
    m.options.emplace_back("virtual_root", common.virtual_root);
  }
  return m;
}

// --- validate --------------------------------------------------------------

int Validate(const CommonFlags& common, std::ostream& out) {
  const Taxonomy t = LoadTaxonomyFromFlags(common);
  std::string branches;
  for (NodeIndex b : t.branches()) {
    if (!branches.empty()) branches += ",";
    branches += t.id(b);
  }
  out << "nodes=" << t.size() << " height=" << t.height() << " branches=["
      << branches << "]\n";
  return kExitOk;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateFlags {
  std::string truth;
  std::string predictions;
  std::string scores;
  std::string policy;
  std::size_t bootstrap = 0;
  double confidence = 0.95;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string format = "json";
};

int Evaluate(const CommonFlags& common, const MetricFlags& metric_flags,
             const EvaluateFlags& f, std::ostream& out) {
  const Taxonomy t = LoadTaxonomyFromFlags(common);
  const MetricConfig config = ToMetricConfig(metric_flags);
  RunManifest manifest = BaseManifest("evaluate", common);
  manifest.inputs.emplace_back("truth", f.truth);
  manifest.metric_config = config;

  const std::vector<LabelRecord> truth = LoadLabelRecords(f.truth, t);
  std::vector<EvaluatedExample> data;
  std::optional<ThresholdPolicy> policy;
  if (!f.predictions.empty()) {
    manifest.inputs.emplace_back("predictions", f.predictions);
    data = JoinRecords(truth, LoadLabelRecords(f.predictions, t));
  } else {
    manifest.inputs.emplace_back("scores", f.scores);
    manifest.inputs.emplace_back("policy", f.policy);
    const ScoreMatrix m = LoadScores(f.scores, t);
    policy = LoadPolicy(f.policy);
    // Every truth record must have a score row and vice versa.
    std::vector<LabelRecord> predicted;
    const auto sets = ApplyThreshold(m, policy->threshold);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      predicted.push_back({m.example_ids[i], sets[i]});
    }
    data = JoinRecords(truth, predicted);
  }

  MetricReport report;
  if (f.bootstrap > 0) {
    BootstrapConfig b{f.bootstrap, f.confidence, f.seed};
    manifest.bootstrap = b;
    manifest.seed = f.seed;
    report = EvaluateWithIntervals(data, t, config, b, f.workers);
  } else {
    report = hiereval::Evaluate(data, t, config);
  }
  manifest.options.emplace_back("format", f.format);
  if (f.format == "markdown") {
    out << RenderReportMarkdown(report);
  } else {
    out << RenderReportJson(report, manifest, policy);
  }
  return kExitOk;
}

// --- select-threshold ------------------------------------------------------

struct SelectFlags {
  std::string truth;
  std::string scores;
  std::string mode = "performance";
  double tau_limit = 0.01;
  std::size_t max_candidates = 4096;
  std::string sweep_out;
  unsigned workers = 0;
};

int SelectThreshold(const CommonFlags& common, const MetricFlags& metric_flags,
                    const SelectFlags& f, std::ostream& out,
                    std::ostream& err) {
  const Taxonomy t = LoadTaxonomyFromFlags(common);
  const MetricConfig config = ToMetricConfig(metric_flags);
  const ThresholdMode mode = ParseThresholdMode(f.mode);
  RunManifest manifest = BaseManifest("select-threshold", common);
  manifest.inputs.emplace_back("truth", f.truth);
  manifest.inputs.emplace_back("scores", f.scores);
  manifest.metric_config = config;
  manifest.grid = SweepGrid{f.max_candidates};
  manifest.options.emplace_back("mode", std::string(ThresholdModeName(mode)));
  if (mode == ThresholdMode::kRiskConstrained) {
    manifest.options.emplace_back("tau_limit", FormatDouble(f.tau_limit));
  }

  const ScoreMatrix m = LoadScores(f.scores, t);
  const TruthTable truth = ToTruthTable(LoadLabelRecords(f.truth, t));
  if (truth.size() != m.rows()) {
    for (const auto& [id, labels] : truth) {
      if (std::find(m.example_ids.begin(), m.example_ids.end(), id) ==
          m.example_ids.end()) {
        throw Error(ErrorCode::kMissingExample,
                    "example '" + id + "' has no scores");
      }
    }
  }
  const auto sweep = Sweep(m, truth, t, config, SweepGrid{f.max_candidates},
                           f.workers);
  const Selection selection = mode == ThresholdMode::kPerformance
                                  ? SelectPerformance(sweep)
                                  : SelectRiskConstrained(sweep, f.tau_limit);
  if (selection.policy.infeasible) {
    err << "warning: no threshold keeps the CAE rate <= "
        << FormatDouble(f.tau_limit) << "; falling back to the minimum-CAE "
        << "threshold " << FormatDouble(selection.policy.threshold)
        << " (CAE " << FormatDouble(selection.point.cae) << ")\n";
  }
  if (!f.sweep_out.empty()) {
    manifest.options.emplace_back("sweep", f.sweep_out);
    WriteDocument(f.sweep_out, RenderSweepCsv(sweep), out);
  }
  out << RenderPolicyJson(selection, manifest);
  return kExitOk;
}

// --- chains ----------------------------------------------------------------

int Chains(const CommonFlags& common, const std::string& mode,
           std::uint64_t seed, std::ostream& out) {
  const Taxonomy t = LoadTaxonomyFromFlags(common);
  const NegativeMode negative_mode = mode == "one-per-level"
                                         ? NegativeMode::kOnePerLevel
                                         : NegativeMode::kAllSiblings;
  out << RenderChainsNdjson(BuildAllChainSets(t, negative_mode, seed));
  return kExitOk;
}

// --- tau -------------------------------------------------------------------

int Tau(const std::string& input, std::ostream& out) {
  RunManifest manifest;
  manifest.subcommand = "tau";
  manifest.inputs.emplace_back("input", input);
  const auto sequences = LoadPathScores(input);
  out << RenderTauSummaryJson(SummarizeTau(sequences), manifest);
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Taxonomy-aware evaluation for multi-label classifiers",
               "hier-eval"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonFlags common;
  MetricFlags metric_flags;

  CLI::App* validate = app.add_subcommand(
      "validate", "Load a taxonomy and print its shape");
  AddTaxonomyFlags(validate, common);

  EvaluateFlags eval_flags;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Compute F1, HDS, HOS and CAE");
  AddTaxonomyFlags(evaluate, common);
  AddMetricFlags(evaluate, metric_flags);
  evaluate->add_option("--truth", eval_flags.truth, "Ground-truth NDJSON")
      ->required();
  auto* predictions = evaluate->add_option(
      "--predictions", eval_flags.predictions, "Predicted label sets NDJSON");
  auto* scores = evaluate->add_option("--scores", eval_flags.scores,
                                      "Score matrix (CSV or NDJSON)");
  auto* policy = evaluate->add_option("--policy", eval_flags.policy,
                                      "Threshold policy JSON");
  predictions->excludes(scores)->excludes(policy);
  scores->needs(policy);
  policy->needs(scores);
  evaluate->add_option("--bootstrap", eval_flags.bootstrap,
                       "Number of bootstrap resamples (0 = no intervals)");
  evaluate->add_option("--confidence", eval_flags.confidence,
                       "Interval confidence level");
  evaluate->add_option("--seed", eval_flags.seed, "Bootstrap seed");
  evaluate->add_option("--workers", eval_flags.workers,
                       "Worker threads (0 = all cores)");
  evaluate->add_option("--format", eval_flags.format, "Report format")
      ->check(CLI::IsMember({"json", "markdown"}));
  evaluate->add_option("-o,--output", common.output, "Write report here");

  SelectFlags select_flags;
  CLI::App* select = app.add_subcommand(
      "select-threshold", "Choose a global decision threshold");
  AddTaxonomyFlags(select, common);
  AddMetricFlags(select, metric_flags);
  select->add_option("--truth", select_flags.truth, "Validation truth NDJSON")
      ->required();
  select->add_option("--scores", select_flags.scores,
                     "Validation score matrix (CSV or NDJSON)")
      ->required();
  select->add_option("--mode", select_flags.mode, "Selection rule")
      ->check(CLI::IsMember({"performance", "risk"}));
  select->add_option("--tau-limit", select_flags.tau_limit,
                     "Maximum admissible CAE rate in risk mode")
      ->check(CLI::Range(0.0, 1.0));
  select->add_option("--max-candidates", select_flags.max_candidates,
                     "Cap on evaluated thresholds")
      ->check(CLI::PositiveNumber);
  select->add_option("--sweep", select_flags.sweep_out,
                     "Write the full sweep table (CSV) here");
  select->add_option("--workers", select_flags.workers,
                     "Worker threads (0 = all cores)");
  select->add_option("-o,--output", common.output, "Write policy here");

  std::string chain_mode = "all";
  std::uint64_t chain_seed = 0;
  CLI::App* chains = app.add_subcommand(
      "chains", "Emit positive and negative hierarchy chains per leaf");
  AddTaxonomyFlags(chains, common);
  chains->add_option("--mode", chain_mode, "Negative sibling selection")
      ->check(CLI::IsMember({"all", "one-per-level"}));
  chains->add_option("--seed", chain_seed, "Seed for one-per-level");
  chains->add_option("-o,--output", common.output, "Write chains here");

  std::string tau_input;
  CLI::App* tau = app.add_subcommand(
      "tau", "Kendall tau-b between depth and path scores");
  tau->add_option("--input", tau_input, "Path-score NDJSON")->required();
  tau->add_option("-o,--output", common.output, "Write summary here");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    std::ostringstream doc;
    int code = kExitOk;
    if (validate->parsed()) {
      code = Validate(common, doc);
    } else if (evaluate->parsed()) {
      code = Evaluate(common, metric_flags, eval_flags, doc);
    } else if (select->parsed()) {
      code = SelectThreshold(common, metric_flags, select_flags, doc, err);
    } else if (chains->parsed()) {
      code = Chains(common, chain_mode, chain_seed, doc);
    } else if (tau->parsed()) {
      code = Tau(tau_input, doc);
    }
    WriteDocument(common.output, doc.str(), out);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return IsInputError(e.code()) ? kExitInputError : kExitRuntimeError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace hiereval::cli
