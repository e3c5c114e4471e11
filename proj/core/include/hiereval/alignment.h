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

#ifndef HIEREVAL_ALIGNMENT_H_
#define HIEREVAL_ALIGNMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hiereval/taxonomy.h"

namespace hiereval {

// ---------------------------------------------------------------------------
// Hierarchy chains for contrastive text.
// ---------------------------------------------------------------------------

struct NegativeChain {
  // Depth of the substituted node (1 = child of the root).
  int level = 0;
  // Id of the sibling that replaced the original node.
  std::string sibling;
  // Node names, general to specific.
  std::vector<std::string> chain;
};

struct ChainSet {
  std::string leaf;
  std::vector<std::string> positive;
  std::vector<NegativeChain> negatives;
};

enum class NegativeMode { kAllSiblings, kOnePerLevel };

// Node names along the root-to-leaf path, general to specific. Throws
// UnknownNode, NotALeaf.
std::vector<std::string> PositiveChain(const Taxonomy& taxonomy,
                                       std::string_view leaf,
                                       bool include_root = false);

// The positive chain with exactly one element swapped for a sibling of the
// node at that level; nodes below the swap are kept as they are. Ordered by
// level, then sibling id.
//
// kOnePerLevel picks sibling ReduceToRange(PhiloxBits(seed, level,
// Fnv1a64(leaf)), #siblings) from the id-sorted sibling list.
std::vector<NegativeChain> NegativeChains(const Taxonomy& taxonomy,
                                          std::string_view leaf,
                                          NegativeMode mode,
                                          std::uint64_t seed = 0);

ChainSet BuildChainSet(const Taxonomy& taxonomy, std::string_view leaf,
                       NegativeMode mode, std::uint64_t seed = 0);
// One ChainSet per non-root leaf, ordered by leaf id.
std::vector<ChainSet> BuildAllChainSets(const Taxonomy& taxonomy,
                                        NegativeMode mode,
                                        std::uint64_t seed = 0);

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view bytes);

// ---------------------------------------------------------------------------
// Rank agreement between similarity scores and depth.
// ---------------------------------------------------------------------------

// Kendall tau-b in O(n log n) (Knight's method). Returns nullopt when either
// side is constant. Throws SequenceTooShort for n < 2 and InvalidArgument for
// a length mismatch.
std::optional<double> KendallTauB(std::span<const double> x,
                                  std::span<const double> y);

// tau-b between positions 1..L (tie-free) and `scores`.
std::optional<double> DepthTau(std::span<const double> scores);

struct PathScoreSequence {
  std::string example_id;
  // Root-to-leaf node ids, root excluded.
  std::vector<std::string> path;
  std::vector<double> scores;
};

struct TauSummary {
  // Absent when no sequence had a defined tau.
  std::optional<double> mean;
  // Population standard deviation.
  std::optional<double> sd;
  std::size_t n_sequences = 0;
  // Sequences shorter than 2 or with constant scores.
  std::size_t n_skipped = 0;
};

TauSummary SummarizeTau(std::span<const PathScoreSequence> sequences);

}  // namespace hiereval

#endif  // HIEREVAL_ALIGNMENT_H_
