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

#include "hiereval/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "file_util.h"
#include "hiereval/error.h"
#include "nlohmann/json.hpp"

namespace hiereval {
namespace {

using nlohmann::json;

std::string_view TrimLine(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t')) {
    line.remove_suffix(1);
  }
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
    line.remove_prefix(1);
  }
  return line;
}

// Calls fn(line_number, line) for every non-blank line. Library errors thrown
// by fn without a line get this line attached.
void ForEachLine(std::string_view text,
                 const std::function<void(std::size_t, std::string_view)>& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string_view line = TrimLine(text.substr(pos, end - pos));
    if (!line.empty()) {
      try {
        fn(line_no, line);
      } catch (const Error& e) {
        if (e.line().has_value()) throw;
        throw Error(e.code(), e.detail(), line_no);
      }
    }
    pos = end + 1;
  }
}

json ParseJsonLine(std::string_view line, std::size_t line_no) {
  try {
    json j = json::parse(line);
    if (!j.is_object()) {
      throw Error(ErrorCode::kSchema, "record is not a JSON object", line_no);
    }
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("invalid JSON: ") + e.what(),
                line_no);
  }
}

std::string RequireString(const json& j, const char* key,
                          std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::kSchema,
                std::string("field \"") + key + "\" must be a string",
                line_no);
  }
  return it->get<std::string>();
}

const json& RequireArray(const json& j, const char* key, std::size_t line_no) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw Error(ErrorCode::kSchema,
                std::string("field \"") + key + "\" must be an array",
                line_no);
  }
  return *it;
}

double RequireNumber(const json& j, const std::string& what,
                     std::size_t line_no) {
  if (!j.is_number()) {
    throw Error(ErrorCode::kSchema, what + " must be a number", line_no);
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonFiniteScore, what + " is not finite", line_no);
  }
  return v;
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    cells.push_back(TrimLine(line.substr(pos, comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return cells;
}

double ParseCsvNumber(std::string_view cell, std::size_t line_no) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::kSchema,
                "cell '" + std::string(cell) + "' is not a number", line_no);
  }
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kNonFiniteScore,
                "cell '" + std::string(cell) + "' is not finite", line_no);
  }
  return v;
}

ScoreMatrix ParseScoresCsv(std::string_view text, const Taxonomy& taxonomy) {
  std::vector<std::string> labels;
  std::vector<std::string> examples;
  std::vector<double> scores;
  std::unordered_set<std::string> seen;
  bool header_done = false;
  ForEachLine(text, [&](std::size_t line_no, std::string_view line) {
    const auto cells = SplitCsv(line);
    if (!header_done) {
      if (cells.front() != "example_id") {
        throw Error(ErrorCode::kSchema,
                    "CSV header must start with \"example_id\"", line_no);
      }
      if (cells.size() < 2) {
        throw Error(ErrorCode::kSchema, "CSV header names no labels",
                    line_no);
      }
      for (std::size_t c = 1; c < cells.size(); ++c) {
        labels.emplace_back(cells[c]);
      }
      // Validates label ids against the taxonomy with this line attached.
      MakeScoreMatrix(taxonomy, {}, labels, {});
      header_done = true;
      return;
    }
    if (cells.size() != labels.size() + 1) {
      throw Error(ErrorCode::kSchema,
                  "row has " + std::to_string(cells.size()) +
                      " cells, header has " +
                      std::to_string(labels.size() + 1),
                  line_no);
    }
    std::string id(cells.front());
    if (id.empty()) {
      throw Error(ErrorCode::kSchema, "empty example_id", line_no);
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kDuplicateExample,
                  "duplicate example '" + id + "'", line_no);
    }
    for (std::size_t c = 1; c < cells.size(); ++c) {
      scores.push_back(ParseCsvNumber(cells[c], line_no));
    }
    examples.push_back(std::move(id));
  });
  if (!header_done) {
    throw Error(ErrorCode::kEmptyScoreMatrix, "score file is empty");
  }
  if (examples.empty()) {
    throw Error(ErrorCode::kEmptyScoreMatrix, "score file has no rows");
  }
  return MakeScoreMatrix(taxonomy, std::move(examples), labels,
                         std::move(scores));
}

ScoreMatrix ParseScoresNdjson(std::string_view text,
                              const Taxonomy& taxonomy) {
  std::vector<std::string> labels;
  std::vector<std::string> examples;
  std::vector<double> scores;
  std::unordered_set<std::string> seen;
  ForEachLine(text, [&](std::size_t line_no, std::string_view line) {
    const json j = ParseJsonLine(line, line_no);
    std::string id = RequireString(j, "example_id", line_no);
    auto it = j.find("scores");
    if (it == j.end() || !it->is_object()) {
      throw Error(ErrorCode::kSchema, "field \"scores\" must be an object",
                  line_no);
    }
    // nlohmann::json objects iterate in key order.
    if (labels.empty()) {
      for (const auto& [label, value] : it->items()) labels.push_back(label);
      if (labels.empty()) {
        throw Error(ErrorCode::kSchema, "record maps no labels", line_no);
      }
      MakeScoreMatrix(taxonomy, {}, labels, {});
    }
    if (it->size() != labels.size()) {
      throw Error(ErrorCode::kSchema,
                  "record maps " + std::to_string(it->size()) +
                      " labels, expected " + std::to_string(labels.size()),
                  line_no);
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kDuplicateExample,
                  "duplicate example '" + id + "'", line_no);
    }
    for (const std::string& label : labels) {
      auto cell = it->find(label);
      if (cell == it->end()) {
        throw Error(ErrorCode::kSchema, "record lacks label '" + label + "'",
                    line_no);
      }
      scores.push_back(RequireNumber(*cell, "score for '" + label + "'",
                                     line_no));
    }
    examples.push_back(std::move(id));
  });
  if (examples.empty()) {
    throw Error(ErrorCode::kEmptyScoreMatrix, "score file is empty");
  }
  return MakeScoreMatrix(taxonomy, std::move(examples), labels,
                         std::move(scores));
}

}  // namespace

std::vector<LabelRecord> ParseLabelRecords(std::string_view text,
                                           const Taxonomy& taxonomy) {
  std::vector<LabelRecord> records;
  std::unordered_set<std::string> seen;
  ForEachLine(text, [&](std::size_t line_no, std::string_view line) {
    const json j = ParseJsonLine(line, line_no);
    std::string id = RequireString(j, "example_id", line_no);
    if (id.empty()) {
      throw Error(ErrorCode::kSchema, "empty example_id", line_no);
    }
    std::vector<std::string> labels;
    for (const json& l : RequireArray(j, "labels", line_no)) {
      if (!l.is_string()) {
        throw Error(ErrorCode::kSchema, "labels must be strings", line_no);
      }
      labels.push_back(l.get<std::string>());
    }
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::kDuplicateExample,
                  "duplicate example '" + id + "'", line_no);
    }
    records.push_back({std::move(id), BindLabels(taxonomy, labels)});
  });
  return records;
}

std::vector<LabelRecord> LoadLabelRecords(const std::string& path,
                                          const Taxonomy& taxonomy) {
  return ParseLabelRecords(internal::ReadFile(path), taxonomy);
}

TruthTable ToTruthTable(std::vector<LabelRecord> records) {
  TruthTable table;
  table.reserve(records.size());
  for (LabelRecord& r : records) {
    table.emplace(std::move(r.example_id), std::move(r.labels));
  }
  return table;
}

ScoreMatrix ParseScores(std::string_view text, const Taxonomy& taxonomy) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    throw Error(ErrorCode::kEmptyScoreMatrix, "score file is empty");
  }
  if (text[first] == '{') return ParseScoresNdjson(text, taxonomy);
  return ParseScoresCsv(text, taxonomy);
}

ScoreMatrix LoadScores(const std::string& path, const Taxonomy& taxonomy) {
  return ParseScores(internal::ReadFile(path), taxonomy);
}

std::vector<PathScoreSequence> ParsePathScores(std::string_view text) {
  std::vector<PathScoreSequence> out;
  ForEachLine(text, [&](std::size_t line_no, std::string_view line) {
    const json j = ParseJsonLine(line, line_no);
    PathScoreSequence seq;
    seq.example_id = RequireString(j, "example_id", line_no);
    for (const json& p : RequireArray(j, "path", line_no)) {
      if (!p.is_string()) {
        throw Error(ErrorCode::kSchema, "path entries must be strings",
                    line_no);
      }
      seq.path.push_back(p.get<std::string>());
    }
    for (const json& s : RequireArray(j, "scores", line_no)) {
      seq.scores.push_back(RequireNumber(s, "path score", line_no));
    }
    if (seq.path.size() != seq.scores.size()) {
      throw Error(ErrorCode::kSchema,
                  "path has " + std::to_string(seq.path.size()) +
                      " nodes but " + std::to_string(seq.scores.size()) +
                      " scores",
                  line_no);
    }
    out.push_back(std::move(seq));
  });
  return out;
}

std::vector<PathScoreSequence> LoadPathScores(const std::string& path) {
  return ParsePathScores(internal::ReadFile(path));
}

ThresholdPolicy ParsePolicy(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema,
                std::string("policy is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::kSchema, "policy must be a JSON object");
  }
  ThresholdPolicy policy;
  auto mode = j.find("mode");
  if (mode == j.end() || !mode->is_string()) {
    throw Error(ErrorCode::kSchema, "policy field \"mode\" must be a string");
  }
  policy.mode = ParseThresholdMode(mode->get<std::string>());
  auto threshold = j.find("threshold");
  if (threshold == j.end() || !threshold->is_number()) {
    throw Error(ErrorCode::kSchema,
                "policy field \"threshold\" must be a number");
  }
  policy.threshold = threshold->get<double>();
  auto limit = j.find("cae_limit");
  if (limit != j.end() && !limit->is_null()) {
    if (!limit->is_number()) {
      throw Error(ErrorCode::kSchema,
                  "policy field \"cae_limit\" must be a number or null");
    }
    policy.cae_limit = limit->get<double>();
  }
  auto infeasible = j.find("infeasible");
  if (infeasible != j.end()) {
    if (!infeasible->is_boolean()) {
      throw Error(ErrorCode::kSchema,
                  "policy field \"infeasible\" must be a boolean");
    }
    policy.infeasible = infeasible->get<bool>();
  }
  return policy;
}

ThresholdPolicy LoadPolicy(const std::string& path) {
  return ParsePolicy(internal::ReadFile(path));
}

std::vector<EvaluatedExample> JoinRecords(
    const std::vector<LabelRecord>& truth,
    const std::vector<LabelRecord>& predicted) {
  std::unordered_map<std::string, const LabelSet*> by_id;
  by_id.reserve(predicted.size());
  for (const LabelRecord& p : predicted) by_id.emplace(p.example_id, &p.labels);
  std::vector<EvaluatedExample> out;
  out.reserve(truth.size());
  for (const LabelRecord& t : truth) {
    auto it = by_id.find(t.example_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kMissingExample,
                  "example '" + t.example_id + "' has no prediction");
    }
    out.push_back({t.example_id, t.labels, *it->second});
  }
  if (predicted.size() != truth.size()) {
    std::unordered_set<std::string> truth_ids;
    for (const LabelRecord& t : truth) truth_ids.insert(t.example_id);
    for (const LabelRecord& p : predicted) {
      if (!truth_ids.contains(p.example_id)) {
        throw Error(ErrorCode::kMissingExample,
                    "example '" + p.example_id + "' has no ground truth");
      }
    }
  }
  return out;
}

}  // namespace hiereval
