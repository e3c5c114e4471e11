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

#ifndef HIEREVAL_TAXONOMY_H_
#define HIEREVAL_TAXONOMY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hiereval {

// Dense index of a node inside one Taxonomy. Indices follow document order
// (a synthetic virtual root, when inserted, is appended last).
using NodeIndex = std::int32_t;
inline constexpr NodeIndex kNoNode = -1;

struct TaxonomyNode {
  std::string id;
  std::string name;
  std::optional<std::string> parent;
};

struct LoadOptions {
  // When set and more than one node lacks a parent, a synthetic root with this
  // id (and name) adopts every parentless node instead of failing with
  // MultipleRoots.
  std::optional<std::string> virtual_root;
};

// An immutable rooted tree of labeled nodes.
//
// Validation order is fixed so each malformed input maps to one diagnostic:
// EmptyTaxonomy, SchemaError (empty id), DuplicateId, UnknownParent,
// MultipleRoots, CycleDetected.
//
// Thread-safe for concurrent reads once constructed.
class Taxonomy {
 public:
  static Taxonomy FromNodes(std::vector<TaxonomyNode> nodes,
                            const LoadOptions& options = {});

  std::size_t size() const { return nodes_.size(); }
  NodeIndex root() const { return root_; }
  // Maximum depth; 0 for a single-node taxonomy.
  int height() const { return height_; }
  // Children of the root, ordered by id.
  std::span<const NodeIndex> branches() const { return children(root_); }

  const TaxonomyNode& node(NodeIndex n) const { return nodes_[n]; }
  const std::string& id(NodeIndex n) const { return nodes_[n].id; }
  const std::string& name(NodeIndex n) const { return nodes_[n].name; }
  NodeIndex parent(NodeIndex n) const { return parent_[n]; }
  int depth(NodeIndex n) const { return depth_[n]; }
  // Ordered by id.
  std::span<const NodeIndex> children(NodeIndex n) const {
    return children_[n];
  }
  bool is_leaf(NodeIndex n) const { return children_[n].empty(); }

  std::optional<NodeIndex> find(std::string_view id) const;
  // Throws UnknownNode.
  NodeIndex index_of(std::string_view id) const;

  // Proper ancestors from the nearest parent upward.
  std::vector<NodeIndex> ancestors(NodeIndex n, bool include_root) const;
  // Deepest common ancestor-or-self. O(depth).
  NodeIndex lca(NodeIndex u, NodeIndex v) const;
  // Edge count of the unique path between u and v.
  int distance(NodeIndex u, NodeIndex v) const;
  // Child of the root on the root-to-n path. Throws RootHasNoBranch for the
  // root itself.
  NodeIndex branch_of(NodeIndex n) const;
  // Root-first path ending at n.
  std::vector<NodeIndex> path_from_root(NodeIndex n) const;
  // One root-first path per leaf, ordered by leaf id.
  std::vector<std::vector<NodeIndex>> root_to_leaf_paths() const;

  // Node indices sorted by id.
  std::span<const NodeIndex> sorted_by_id() const { return by_id_; }

  // Id-based conveniences; all throw UnknownNode for absent ids.
  std::vector<std::string> ancestors(std::string_view id,
                                     bool include_root) const;
  std::string lca(std::string_view u, std::string_view v) const;
  int distance(std::string_view u, std::string_view v) const;
  std::string branch_of(std::string_view id) const;

 private:
  Taxonomy() = default;

  std::vector<TaxonomyNode> nodes_;
  std::vector<NodeIndex> parent_;
  std::vector<int> depth_;
  std::vector<NodeIndex> branch_;
  std::vector<std::vector<NodeIndex>> children_;
  std::vector<NodeIndex> by_id_;
  std::unordered_map<std::string, NodeIndex> index_;
  NodeIndex root_ = kNoNode;
  int height_ = 0;
};

// Parses the JSON document form: {"nodes": [{"id", "name", "parent"}, ...]}.
// Unknown fields are ignored. Structural problems throw SchemaError.
Taxonomy ParseTaxonomy(std::string_view json_text,
                       const LoadOptions& options = {});
Taxonomy LoadTaxonomyFile(const std::string& path,
                          const LoadOptions& options = {});

}  // namespace hiereval

#endif  // HIEREVAL_TAXONOMY_H_
