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

#include "hiereval/taxonomy.h"

#include <algorithm>
#include <deque>
#include <utility>

#include "file_util.h"
#include "hiereval/error.h"
#include "nlohmann/json.hpp"

namespace hiereval {
namespace {

void SortById(std::vector<NodeIndex>& v,
              const std::vector<TaxonomyNode>& nodes) {
  std::sort(v.begin(), v.end(), [&](NodeIndex a, NodeIndex b) {
    return nodes[a].id < nodes[b].id;
  });
}

}  // namespace

Taxonomy Taxonomy::FromNodes(std::vector<TaxonomyNode> nodes,
                             const LoadOptions& options) {
  if (nodes.empty()) {
    throw Error(ErrorCode::kEmptyTaxonomy, "taxonomy has no nodes");
  }
  Taxonomy t;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id.empty()) {
      throw Error(ErrorCode::kSchema,
                  "node #" + std::to_string(i) + " has an empty id");
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [it, inserted] =
        t.index_.emplace(nodes[i].id, static_cast<NodeIndex>(i));
    if (!inserted) {
      throw Error(ErrorCode::kDuplicateId,
                  "duplicate node id '" + nodes[i].id + "'");
    }
  }
  for (const TaxonomyNode& n : nodes) {
    if (n.parent.has_value() && !t.index_.contains(*n.parent)) {
      throw Error(ErrorCode::kUnknownParent, "node '" + n.id +
                                                 "' has unknown parent '" +
                                                 *n.parent + "'");
    }
  }

  std::vector<NodeIndex> roots;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].parent.has_value()) roots.push_back(static_cast<NodeIndex>(i));
  }
  if (roots.size() > 1) {
    if (!options.virtual_root.has_value()) {
      SortById(roots, nodes);
      std::string list;
      for (NodeIndex r : roots) {
        if (!list.empty()) list += ", ";
        list += nodes[r].id;
      }
      throw Error(ErrorCode::kMultipleRoots,
                  std::to_string(roots.size()) + " nodes have no parent: " +
                      list);
    }
    const std::string& vid = *options.virtual_root;
    if (vid.empty()) {
      throw Error(ErrorCode::kSchema, "virtual root id must be non-empty");
    }
    if (t.index_.contains(vid)) {
      throw Error(ErrorCode::kDuplicateId,
                  "virtual root id '" + vid + "' is already a node id");
    }
    for (NodeIndex r : roots) nodes[r].parent = vid;
    t.index_.emplace(vid, static_cast<NodeIndex>(nodes.size()));
    nodes.push_back(TaxonomyNode{vid, vid, std::nullopt});
    roots = {static_cast<NodeIndex>(nodes.size() - 1)};
  }

  const std::size_t n = nodes.size();
  t.parent_.assign(n, kNoNode);
  t.children_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes[i].parent.has_value()) {
      const NodeIndex p = t.index_.at(*nodes[i].parent);
      t.parent_[i] = p;
      t.children_[p].push_back(static_cast<NodeIndex>(i));
    }
  }
  if (roots.empty()) {
    // Every node has a parent, so following parents must revisit a node.
    throw Error(ErrorCode::kCycleDetected,
                "no root: every node has a parent");
  }
  t.root_ = roots.front();
  for (auto& c : t.children_) SortById(c, nodes);

  // Nodes unreachable from the single root sit on a cycle (or hang off one).
  t.depth_.assign(n, -1);
  t.branch_.assign(n, kNoNode);
  t.depth_[t.root_] = 0;
  std::deque<NodeIndex> queue{t.root_};
  std::size_t reached = 0;
  while (!queue.empty()) {
    const NodeIndex u = queue.front();
    queue.pop_front();
    ++reached;
    t.height_ = std::max(t.height_, t.depth_[u]);
    for (NodeIndex c : t.children_[u]) {
      t.depth_[c] = t.depth_[u] + 1;
      t.branch_[c] = (u == t.root_) ? c : t.branch_[u];
      queue.push_back(c);
    }
  }
  if (reached != n) {
    std::vector<NodeIndex> stranded;
    for (std::size_t i = 0; i < n; ++i) {
      if (t.depth_[i] < 0) stranded.push_back(static_cast<NodeIndex>(i));
    }
    SortById(stranded, nodes);
    throw Error(ErrorCode::kCycleDetected,
                "node '" + nodes[stranded.front()].id +
                    "' is not reachable from root '" + nodes[t.root_].id +
                    "' (" + std::to_string(stranded.size()) +
                    " nodes on or below a cycle)");
  }

  t.by_id_.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.by_id_[i] = static_cast<NodeIndex>(i);
  SortById(t.by_id_, nodes);
  t.nodes_ = std::move(nodes);
  return t;
}

std::optional<NodeIndex> Taxonomy::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Taxonomy::index_of(std::string_view id) const {
  auto found = find(id);
  if (!found) {
    throw Error(ErrorCode::kUnknownNode,
                "unknown node '" + std::string(id) + "'");
  }
  return *found;
}

std::vector<NodeIndex> Taxonomy::ancestors(NodeIndex n,
                                           bool include_root) const {
  std::vector<NodeIndex> out;
  out.reserve(depth_[n]);
  for (NodeIndex p = parent_[n]; p != kNoNode; p = parent_[p]) {
    if (p == root_ && !include_root) break;
    out.push_back(p);
  }
  return out;
}

NodeIndex Taxonomy::lca(NodeIndex u, NodeIndex v) const {
  while (depth_[u] > depth_[v]) u = parent_[u];
  while (depth_[v] > depth_[u]) v = parent_[v];
  while (u != v) {
    u = parent_[u];
    v = parent_[v];
  }
  return u;
}

int Taxonomy::distance(NodeIndex u, NodeIndex v) const {
  return depth_[u] + depth_[v] - 2 * depth_[lca(u, v)];
}

NodeIndex Taxonomy::branch_of(NodeIndex n) const {
  if (n == root_) {
    throw Error(ErrorCode::kRootHasNoBranch,
                "root '" + nodes_[n].id + "' belongs to no branch");
  }
  return branch_[n];
}

std::vector<NodeIndex> Taxonomy::path_from_root(NodeIndex n) const {
  std::vector<NodeIndex> path(depth_[n] + 1);
  for (int k = depth_[n]; k >= 0; --k) {
    path[k] = n;
    n = parent_[n];
  }
  return path;
}

std::vector<std::vector<NodeIndex>> Taxonomy::root_to_leaf_paths() const {
  std::vector<std::vector<NodeIndex>> paths;
  for (NodeIndex n : by_id_) {
    if (is_leaf(n)) paths.push_back(path_from_root(n));
  }
  return paths;
}

std::vector<std::string> Taxonomy::ancestors(std::string_view id,
                                             bool include_root) const {
  std::vector<std::string> out;
  for (NodeIndex a : ancestors(index_of(id), include_root)) {
    out.push_back(nodes_[a].id);
  }
  return out;
}

std::string Taxonomy::lca(std::string_view u, std::string_view v) const {
  return nodes_[lca(index_of(u), index_of(v))].id;
}

int Taxonomy::distance(std::string_view u, std::string_view v) const {
  return distance(index_of(u), index_of(v));
}

std::string Taxonomy::branch_of(std::string_view id) const {
  return nodes_[branch_of(index_of(id))].id;
}

Taxonomy ParseTaxonomy(std::string_view json_text,
                       const LoadOptions& options) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema,
                std::string("taxonomy is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw Error(ErrorCode::kSchema,
                "taxonomy must be an object with a \"nodes\" array");
  }
  std::vector<TaxonomyNode> nodes;
  nodes.reserve(doc["nodes"].size());
  std::size_t i = 0;
  for (const json& entry : doc["nodes"]) {
    const std::string where = "nodes[" + std::to_string(i++) + "]";
    if (!entry.is_object()) {
      throw Error(ErrorCode::kSchema, where + " is not an object");
    }
    auto id = entry.find("id");
    if (id == entry.end() || !id->is_string()) {
      throw Error(ErrorCode::kSchema, where + ".id must be a string");
    }
    TaxonomyNode node;
    node.id = id->get<std::string>();
    auto name = entry.find("name");
    if (name == entry.end() || name->is_null()) {
      node.name = node.id;
    } else if (name->is_string()) {
      node.name = name->get<std::string>();
    } else {
      throw Error(ErrorCode::kSchema, where + ".name must be a string");
    }
    auto parent = entry.find("parent");
    if (parent != entry.end() && !parent->is_null()) {
      if (!parent->is_string()) {
        throw Error(ErrorCode::kSchema,
                    where + ".parent must be a string or null");
      }
      node.parent = parent->get<std::string>();
    }
    nodes.push_back(std::move(node));
  }
  return Taxonomy::FromNodes(std::move(nodes), options);
}

Taxonomy LoadTaxonomyFile(const std::string& path,
                          const LoadOptions& options) {
  return ParseTaxonomy(internal::ReadFile(path), options);
}

}  // namespace hiereval
