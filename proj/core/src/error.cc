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

#include "hiereval/error.h"

namespace hiereval {
namespace {

std::string Format(ErrorCode code, const std::string& message,
                   std::optional<std::size_t> line) {
  std::string out(ErrorCodeName(code));
  out += ": ";
  out += message;
  if (line.has_value()) {
    out += " (line " + std::to_string(*line) + ")";
  }
  return out;
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyTaxonomy: return "EmptyTaxonomy";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownParent: return "UnknownParent";
    case ErrorCode::kMultipleRoots: return "MultipleRoots";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kRootHasNoBranch: return "RootHasNoBranch";
    case ErrorCode::kNotALeaf: return "NotALeaf";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kMissingExample: return "MissingExample";
    case ErrorCode::kDuplicateExample: return "DuplicateExample";
    case ErrorCode::kNonFiniteScore: return "NonFiniteScore";
    case ErrorCode::kEmptyScoreMatrix: return "EmptyScoreMatrix";
    case ErrorCode::kSequenceTooShort: return "SequenceTooShort";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

bool IsInputError(ErrorCode code) { return code != ErrorCode::kIo; }

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(Format(code, message, std::nullopt)),
      code_(code),
      detail_(message) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(Format(code, message, line)),
      code_(code),
      line_(line),
      detail_(message) {}

}  // namespace hiereval
