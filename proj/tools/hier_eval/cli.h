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

#ifndef HIEREVAL_TOOLS_HIER_EVAL_CLI_H_
#define HIEREVAL_TOOLS_HIER_EVAL_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace hiereval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitInputError = 2;

// Runs one hier-eval invocation; args[0] is the program name. Documents go to
// `out` (unless --output is given), diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hiereval::cli

#endif  // HIEREVAL_TOOLS_HIER_EVAL_CLI_H_
