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

#ifndef HIEREVAL_IO_H_
#define HIEREVAL_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "hiereval/alignment.h"
#include "hiereval/metrics.h"
#include "hiereval/taxonomy.h"
#include "hiereval/thresholding.h"

// Readers for the toolkit's line-oriented input formats. Errors carry the
// 1-based line of the offending record; blank lines are skipped.
namespace hiereval {

struct LabelRecord {
  std::string example_id;
  LabelSet labels;
};

// NDJSON, one {"example_id": str, "labels": [str, ...]} per line.
std::vector<LabelRecord> ParseLabelRecords(std::string_view text,
                                           const Taxonomy& taxonomy);
std::vector<LabelRecord> LoadLabelRecords(const std::string& path,
                                          const Taxonomy& taxonomy);
TruthTable ToTruthTable(std::vector<LabelRecord> records);

// Either CSV (header "example_id,<label>,...", one numeric row per example)
// or NDJSON ({"example_id": str, "scores": {label: number, ...}} per line,
// every record mapping the same labels; columns are ordered by label id).
// The format is detected from the first non-blank character.
ScoreMatrix ParseScores(std::string_view text, const Taxonomy& taxonomy);
ScoreMatrix LoadScores(const std::string& path, const Taxonomy& taxonomy);

// NDJSON, one {"example_id": str, "path": [str], "scores": [number]} per line.
std::vector<PathScoreSequence> ParsePathScores(std::string_view text);
std::vector<PathScoreSequence> LoadPathScores(const std::string& path);

// {"mode": str, "threshold": number, "cae_limit": number|null,
//  "infeasible": bool}; other fields are ignored.
ThresholdPolicy ParsePolicy(std::string_view text);
ThresholdPolicy LoadPolicy(const std::string& path);

// Pairs truth and predicted records by example id. Every id must appear in
// both (MissingExample). Output follows the truth order.
std::vector<EvaluatedExample> JoinRecords(
    const std::vector<LabelRecord>& truth,
    const std::vector<LabelRecord>& predicted);

}  // namespace hiereval

#endif  // HIEREVAL_IO_H_
