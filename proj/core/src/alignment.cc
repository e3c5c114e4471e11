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

#include "hiereval/alignment.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hiereval/error.h"
#include "hiereval/philox.h"

namespace hiereval {
namespace {

NodeIndex RequireLeaf(const Taxonomy& taxonomy, std::string_view leaf) {
  const NodeIndex n = taxonomy.index_of(leaf);
  if (!taxonomy.is_leaf(n)) {
    throw Error(ErrorCode::kNotALeaf,
                "node '" + std::string(leaf) + "' has children");
  }
  return n;
}

// Sum of t(t-1)/2 over runs of equal values in an already grouped range.
template <typename Eq>
std::uint64_t TiedPairs(std::size_t n, Eq same_as_previous) {
  std::uint64_t pairs = 0;
  std::uint64_t run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (same_as_previous(i)) {
      ++run;
    } else {
      pairs += run * (run - 1) / 2;
      run = 1;
    }
  }
  return pairs + run * (run - 1) / 2;
}

// Stable merge sort that returns the number of strict inversions.
std::uint64_t SortCountingInversions(std::vector<double>& v) {
  std::vector<double> buffer(v.size());
  std::uint64_t inversions = 0;
  for (std::size_t width = 1; width < v.size(); width *= 2) {
    for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, v.size());
      const std::size_t hi = std::min(lo + 2 * width, v.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          inversions += mid - i;
          buffer[k++] = v[j++];
        } else {
          buffer[k++] = v[i++];
        }
      }
      while (i < mid) buffer[k++] = v[i++];
      while (j < hi) buffer[k++] = v[j++];
    }
    v.swap(buffer);
  }
  return inversions;
}

}  // namespace

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<std::string> PositiveChain(const Taxonomy& taxonomy,
                                       std::string_view leaf,
                                       bool include_root) {
  const NodeIndex n = RequireLeaf(taxonomy, leaf);
  std::vector<std::string> chain;
  for (NodeIndex p : taxonomy.path_from_root(n)) {
    if (p == taxonomy.root() && !include_root) continue;
    chain.push_back(taxonomy.name(p));
  }
  return chain;
}

std::vector<NegativeChain> NegativeChains(const Taxonomy& taxonomy,
                                          std::string_view leaf,
                                          NegativeMode mode,
                                          std::uint64_t seed) {
  const NodeIndex n = RequireLeaf(taxonomy, leaf);
  const std::vector<NodeIndex> path = taxonomy.path_from_root(n);
  std::vector<std::string> positive;
  for (std::size_t k = 1; k < path.size(); ++k) {
    positive.push_back(taxonomy.name(path[k]));
  }
  const std::uint64_t leaf_hash = Fnv1a64(leaf);

  std::vector<NegativeChain> out;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const NodeIndex original = path[k];
    std::vector<NodeIndex> siblings;
    for (NodeIndex s : taxonomy.children(path[k - 1])) {
      if (s != original) siblings.push_back(s);
    }
    if (siblings.empty()) continue;
    if (mode == NegativeMode::kOnePerLevel) {
      const auto pick = ReduceToRange(PhiloxBits(seed, k, leaf_hash),
                                      siblings.size());
      siblings = {siblings[pick]};
    }
    for (NodeIndex s : siblings) {
      NegativeChain negative{static_cast<int>(k), taxonomy.id(s), positive};
      negative.chain[k - 1] = taxonomy.name(s);
      out.push_back(std::move(negative));
    }
  }
  return out;
}

ChainSet BuildChainSet(const Taxonomy& taxonomy, std::string_view leaf,
                       NegativeMode mode, std::uint64_t seed) {
  return {std::string(leaf), PositiveChain(taxonomy, leaf),
          NegativeChains(taxonomy, leaf, mode, seed)};
}

std::vector<ChainSet> BuildAllChainSets(const Taxonomy& taxonomy,
                                        NegativeMode mode,
                                        std::uint64_t seed) {
  std::vector<ChainSet> out;
  for (NodeIndex n : taxonomy.sorted_by_id()) {
    if (n == taxonomy.root() || !taxonomy.is_leaf(n)) continue;
    out.push_back(BuildChainSet(taxonomy, taxonomy.id(n), mode, seed));
  }
  return out;
}

std::optional<double> KendallTauB(std::span<const double> x,
                                  std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "tau needs sequences of equal length");
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw Error(ErrorCode::kSequenceTooShort,
                "tau needs at least 2 values, got " + std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });
  const std::uint64_t tied_x = TiedPairs(
      n, [&](std::size_t i) { return x[order[i]] == x[order[i - 1]]; });
  const std::uint64_t tied_xy = TiedPairs(n, [&](std::size_t i) {
    return x[order[i]] == x[order[i - 1]] && y[order[i]] == y[order[i - 1]];
  });
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const std::uint64_t discordant = SortCountingInversions(ys);
  const std::uint64_t tied_y =
      TiedPairs(n, [&](std::size_t i) { return ys[i] == ys[i - 1]; });

  const std::uint64_t total = n * (n - 1) / 2;
  if (tied_x == total || tied_y == total) return std::nullopt;
  // concordant - discordant over pairs untied on both sides.
  const auto s = static_cast<std::int64_t>(total - tied_x - tied_y + tied_xy) -
                 2 * static_cast<std::int64_t>(discordant);
  const double denom = std::sqrt(static_cast<double>(total - tied_x) *
                                 static_cast<double>(total - tied_y));
  return static_cast<double>(s) / denom;
}

std::optional<double> DepthTau(std::span<const double> scores) {
  std::vector<double> depth(scores.size());
  std::iota(depth.begin(), depth.end(), 1.0);
  return KendallTauB(depth, scores);
}

TauSummary SummarizeTau(std::span<const PathScoreSequence> sequences) {
  TauSummary summary;
  std::vector<double> taus;
  for (const PathScoreSequence& seq : sequences) {
    std::optional<double> tau;
    if (seq.scores.size() >= 2) tau = DepthTau(seq.scores);
    if (tau.has_value()) {
      taus.push_back(*tau);
    } else {
      ++summary.n_skipped;
    }
  }
  summary.n_sequences = taus.size();
  if (taus.empty()) return summary;
  double sum = 0.0;
  for (double t : taus) sum += t;
  const double mean = sum / static_cast<double>(taus.size());
  double sq = 0.0;
  for (double t : taus) sq += (t - mean) * (t - mean);
  summary.mean = mean;
  summary.sd = std::sqrt(sq / static_cast<double>(taus.size()));
  return summary;
}

}  // namespace hiereval
