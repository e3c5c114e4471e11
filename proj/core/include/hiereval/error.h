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

#ifndef HIEREVAL_ERROR_H_
#define HIEREVAL_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hiereval {

// Every failure the library reports carries exactly one of these codes.
enum class ErrorCode {
  // Taxonomy loading.
  kEmptyTaxonomy,
  kDuplicateId,
  kUnknownParent,
  kMultipleRoots,
  kCycleDetected,
  // Taxonomy queries.
  kUnknownNode,
  kRootHasNoBranch,
  kNotALeaf,
  // Datasets and metrics.
  kUnknownLabel,
  kEmptyDataset,
  kMissingExample,
  kDuplicateExample,
  // Scores and thresholds.
  kNonFiniteScore,
  kEmptyScoreMatrix,
  // Alignment.
  kSequenceTooShort,
  // Malformed documents and invalid arguments.
  kSchema,
  kInvalidArgument,
  kIo,
};

// Stable name of `code`, e.g. "CycleDetected".
std::string_view ErrorCodeName(ErrorCode code);

// True for codes caused by bad user input (as opposed to I/O failures).
bool IsInputError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  // `line` is 1-based and refers to the line of the offending record.
  Error(ErrorCode code, const std::string& message, std::size_t line);

  ErrorCode code() const { return code_; }
  const std::optional<std::size_t>& line() const { return line_; }
  // Message without the code prefix or line suffix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
  std::string detail_;
};

}  // namespace hiereval

#endif  // HIEREVAL_ERROR_H_
