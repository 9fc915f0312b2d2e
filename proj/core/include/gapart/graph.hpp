// Copyright 2026 The gapart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gapart {

using NodeId = std::int32_t;
using EdgeId = std::int64_t;

struct WeightedEdge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;
};

/// Immutable undirected graph in compressed sparse row form.
///
/// Every undirected edge {i,j} is stored twice, once in row i and once in
/// row j, with the same positive weight. Rows are sorted by column and carry
/// no self-loops. Finest-level graphs have unit weights; coarse levels carry
/// accumulated weights, but convolutions, losses and metrics only look at the
/// adjacency pattern.
class CsrGraph {
 public:
  CsrGraph() = default;

  /// Takes ownership of already-canonical arrays; validates every invariant
  /// and throws std::invalid_argument on violation.
  CsrGraph(std::vector<EdgeId> row_ptr, std::vector<NodeId> col_idx,
           std::vector<double> edge_weight);

  NodeId num_nodes() const { return static_cast<NodeId>(row_ptr_.empty() ? 0 : row_ptr_.size() - 1); }
  /// Number of undirected edges.
  EdgeId num_edges() const { return static_cast<EdgeId>(col_idx_.size() / 2); }
  /// Number of stored (directed) entries, 2 * num_edges().
  EdgeId num_entries() const { return static_cast<EdgeId>(col_idx_.size()); }

  std::span<const EdgeId> row_ptr() const { return row_ptr_; }
  std::span<const NodeId> col_idx() const { return col_idx_; }
  std::span<const double> edge_weight() const { return edge_weight_; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {col_idx_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
  }
  std::span<const double> neighbor_weights(NodeId i) const {
    return {edge_weight_.data() + row_ptr_[i], static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
  }
  /// Size of the neighbourhood, i.e. the binary-pattern degree.
  NodeId degree(NodeId i) const { return static_cast<NodeId>(row_ptr_[i + 1] - row_ptr_[i]); }

  bool has_edge(NodeId i, NodeId j) const;

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;

 private:
  std::vector<EdgeId> row_ptr_;
  std::vector<NodeId> col_idx_;
  std::vector<double> edge_weight_;
};

/// Builds a canonical graph on n nodes. Duplicate pairs are merged with their
/// weights summed, self-loops are dropped and a missing reverse edge is added
/// with the forward weight. Throws std::invalid_argument if n == 0, an index
/// is outside [0, n) or a weight is not positive.
CsrGraph from_edge_list(std::span<const WeightedEdge> edges, NodeId n);
CsrGraph from_edge_list(std::span<const std::pair<NodeId, NodeId>> edges, NodeId n);

/// Each undirected edge once, as (u < v, weight).
std::vector<WeightedEdge> edges_of(const CsrGraph& g);

/// Weighted degrees d_i = sum_j w(i,j). Equals neighbourhood size for unit weights.
std::vector<double> degrees(const CsrGraph& g);

/// Binary-pattern degrees |N(i)|.
std::vector<double> pattern_degrees(const CsrGraph& g);

/// Component id per node, numbered in order of first appearance (BFS from node 0, 1, ...).
std::vector<NodeId> connected_components(const CsrGraph& g, NodeId* num_components = nullptr);

bool is_connected(const CsrGraph& g);

/// Subgraph induced by `nodes` (any order, no duplicates), renumbered to
/// positions in `nodes`.
CsrGraph induced_subgraph(const CsrGraph& g, std::span<const NodeId> nodes);

struct ComponentExtraction {
  CsrGraph graph;
  /// old node -> new node, or -1 when the node was dropped.
  std::vector<NodeId> old_to_new;
  /// new node -> old node.
  std::vector<NodeId> new_to_old;
};

/// Largest connected component; ties go to the component containing the
/// smallest node index. Retained nodes keep their relative order.
ComponentExtraction largest_connected_component(const CsrGraph& g);

/// Relabels nodes: node i of `g` becomes node perm[i].
CsrGraph permute_nodes(const CsrGraph& g, std::span<const NodeId> perm);

// Small named graphs, mostly for tests and examples.
CsrGraph path_graph(NodeId n);
CsrGraph cycle_graph(NodeId n);
CsrGraph complete_graph(NodeId n);
/// rows x cols 4-neighbour lattice, node index r * cols + c.
CsrGraph grid_graph(NodeId rows, NodeId cols);

}  // namespace gapart
