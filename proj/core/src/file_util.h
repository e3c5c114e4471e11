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

#ifndef HIEREVAL_SRC_FILE_UTIL_H_
#define HIEREVAL_SRC_FILE_UTIL_H_

#include <string>

namespace hiereval::internal {

// Reads a whole file. Throws InvalidArgument when it cannot be opened.
std::string ReadFile(const std::string& path);

}  // namespace hiereval::internal

#endif  // HIEREVAL_SRC_FILE_UTIL_H_
