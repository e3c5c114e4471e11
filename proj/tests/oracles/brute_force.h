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

#ifndef HIEREVAL_TESTS_ORACLES_BRUTE_FORCE_H_
#define HIEREVAL_TESTS_ORACLES_BRUTE_FORCE_H_

// Reference implementations used only by tests. They work on raw string ids
// and parent maps and share no code with the library's index-based paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hiereval/taxonomy.h"

namespace hiereval::oracle {

using Labels = std::set<std::string>;

struct RawExample {
  Labels truth;
  Labels predicted;
};

class RawTree {
 public:
  explicit RawTree(const std::vector<TaxonomyNode>& nodes) {
    for (const TaxonomyNode& n : nodes) {
      if (n.parent) {
        parent_[n.id] = *n.parent;
        adjacency_[n.id].insert(*n.parent);
        adjacency_[*n.parent].insert(n.id);
      } else {
        root_ = n.id;
      }
      adjacency_[n.id];
    }
  }

  const std::string& root() const { return root_; }
  const std::map<std::string, std::set<std::string>>& adjacency() const {
    return adjacency_;
  }

  // Ancestor-or-self chain, self first.
  std::vector<std::string> Chain(const std::string& n) const {
    std::vector<std::string> out{n};
    for (auto it = parent_.find(n); it != parent_.end();
         it = parent_.find(it->second)) {
      out.push_back(it->second);
    }
    return out;
  }

  int Depth(const std::string& n) const {
    return static_cast<int>(Chain(n).size()) - 1;
  }

  // Deepest element of the intersection of both ancestor-or-self sets.
  std::string Lca(const std::string& u, const std::string& v) const {
    const auto cu = Chain(u);
    const auto cv = Chain(v);
    const std::set<std::string> sv(cv.begin(), cv.end());
    std::string best;
    int best_depth = -1;
    for (const std::string& a : cu) {
      if (sv.count(a) && Depth(a) > best_depth) {
        best = a;
        best_depth = Depth(a);
      }
    }
    return best;
  }

  // Breadth-first search on the undirected tree.
  int Bfs(const std::string& from, const std::string& to) const {
    std::map<std::string, int> dist{{from, 0}};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
      const std::string u = queue.front();
      queue.pop_front();
      if (u == to) return dist[u];
      for (const std::string& w : adjacency_.at(u)) {
        if (!dist.count(w)) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return -1;
  }

  // All BFS distances from `from`.
  std::map<std::string, int> BfsAll(const std::string& from) const {
    std::map<std::string, int> dist{{from, 0}};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
      const std::string u = queue.front();
      queue.pop_front();
      for (const std::string& w : adjacency_.at(u)) {
        if (!dist.count(w)) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return dist;
  }

  Labels Closure(const Labels& labels, bool include_root) const {
    Labels out;
    for (const std::string& l : labels) {
      for (const std::string& a : Chain(l)) {
        if (a == root_ && !include_root) continue;
        out.insert(a);
      }
    }
    return out;
  }

 private:
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::set<std::string>> adjacency_;
  std::string root_;
};

inline std::size_t Overlap(const Labels& a, const Labels& b) {
  std::size_t n = 0;
  for (const std::string& x : a) n += b.count(x);
  return n;
}

inline double MacroF1(const std::vector<RawExample>& data) {
  std::map<std::string, std::array<long, 3>> counts;  // tp, fp, fn
  for (const RawExample& e : data) {
    for (const std::string& p : e.predicted) {
      counts[p][e.truth.count(p) ? 0 : 1]++;
    }
    for (const std::string& t : e.truth) {
      if (!e.predicted.count(t)) counts[t][2]++;
    }
  }
  if (counts.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [label, c] : counts) {
    sum += 2.0 * c[0] / (2.0 * c[0] + c[1] + c[2]);
  }
  return sum / counts.size();
}

inline double HosMicro(const RawTree& tree, const std::vector<RawExample>& data,
                       bool include_root) {
  double overlap = 0, predicted = 0, truth = 0;
  for (const RawExample& e : data) {
    const Labels t = tree.Closure(e.truth, include_root);
    const Labels p = tree.Closure(e.predicted, include_root);
    overlap += Overlap(t, p);
    predicted += p.size();
    truth += t.size();
  }
  const double hp = predicted > 0 ? overlap / predicted : 0.0;
  const double hr = truth > 0 ? overlap / truth : 0.0;
  return hp + hr > 0 ? 2 * hp * hr / (hp + hr) : 0.0;
}

inline double HosMacro(const RawTree& tree, const std::vector<RawExample>& data,
                       bool include_root) {
  double sum = 0;
  for (const RawExample& e : data) {
    const Labels t = tree.Closure(e.truth, include_root);
    const Labels p = tree.Closure(e.predicted, include_root);
    if (t.empty() && p.empty()) {
      sum += 1;
    } else if (!t.empty() && !p.empty()) {
      const double o = Overlap(t, p);
      const double hp = o / p.size(), hr = o / t.size();
      if (hp + hr > 0) sum += 2 * hp * hr / (hp + hr);
    }
  }
  return data.empty() ? 0.0 : sum / data.size();
}

inline double Hds(const RawTree& tree, const std::vector<RawExample>& data,
                  int cap) {
  auto credit = [&](const std::string& x, const Labels& s) {
    int best = 1 << 30;
    for (const std::string& y : s) best = std::min(best, tree.Bfs(x, y));
    return std::max(0.0, 1.0 - static_cast<double>(best) / cap);
  };
  double sum = 0;
  for (const RawExample& e : data) {
    if (e.truth.empty() && e.predicted.empty()) {
      sum += 1;
      continue;
    }
    if (e.truth.empty() || e.predicted.empty()) continue;
    double p = 0, r = 0;
    for (const std::string& x : e.predicted) p += credit(x, e.truth);
    for (const std::string& x : e.truth) r += credit(x, e.predicted);
    p /= e.predicted.size();
    r /= e.truth.size();
    if (p + r > 0) sum += 2 * p * r / (p + r);
  }
  return data.empty() ? 0.0 : sum / data.size();
}

// Pairwise-LCA formulation: every (p, t) pair meets only at the root.
inline bool Cae(const RawTree& tree, const Labels& truth,
                const Labels& predicted) {
  if (truth.empty() || predicted.empty()) return false;
  for (const std::string& p : predicted) {
    for (const std::string& t : truth) {
      if (tree.Lca(p, t) != tree.root()) return false;
    }
  }
  return true;
}

inline double CaeRate(const RawTree& tree,
                      const std::vector<RawExample>& data,
                      bool truth_nonempty_only) {
  double flagged = 0, denom = 0;
  for (const RawExample& e : data) {
    if (!truth_nonempty_only || !e.truth.empty()) denom += 1;
    if (Cae(tree, e.truth, e.predicted)) flagged += 1;
  }
  return denom > 0 ? flagged / denom : 0.0;
}

// Kendall tau-b by enumerating all pairs. nullopt when a side is constant.
inline std::optional<double> TauB(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  long c = 0, d = 0, tx = 0, ty = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0 && dy == 0) {
        ++tx;
        ++ty;
      } else if (dx == 0) {
        ++tx;
      } else if (dy == 0) {
        ++ty;
      } else if ((dx > 0) == (dy > 0)) {
        ++c;
      } else {
        ++d;
      }
    }
  }
  const long n0 = static_cast<long>(x.size() * (x.size() - 1) / 2);
  const double denom =
      std::sqrt(static_cast<double>(n0 - tx)) *
      std::sqrt(static_cast<double>(n0 - ty));
  if (denom == 0) return std::nullopt;
  return static_cast<double>(c - d) / denom;
}

// Linear-interpolation percentile (h = (n - 1) q) on an unsorted copy.
inline double Percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = (v.size() - 1) * q;
  const std::size_t lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - lo) * (v[hi] - v[lo]);
}

}  // namespace hiereval::oracle

#endif  // HIEREVAL_TESTS_ORACLES_BRUTE_FORCE_H_
