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

#ifndef HIEREVAL_SRC_PARALLEL_H_
#define HIEREVAL_SRC_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace hiereval::internal {

// Runs fn(0)..fn(n-1) on up to `workers` threads (0 = hardware concurrency).
// Each index runs exactly once; the exception thrown for the lowest index is
// rethrown after all threads join.
void ParallelFor(std::size_t n, unsigned workers,
                 const std::function<void(std::size_t)>& fn);

}  // namespace hiereval::internal

#endif  // HIEREVAL_SRC_PARALLEL_H_
