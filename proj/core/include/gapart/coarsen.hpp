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
#include <vector>

#include "gapart/graph.hpp"
#include "gapart/tensor.hpp"

namespace gapart {

/// Fine node -> coarse cluster. Clusters hold one node or two adjacent nodes.
struct ClusterMap {
  std::vector<NodeId> fine_to_coarse;
  NodeId num_coarse = 0;

  NodeId num_fine() const { return static_cast<NodeId>(fine_to_coarse.size()); }
  friend bool operator==(const ClusterMap&, const ClusterMap&) = default;
};

struct CoarsenOptions {
  /// Score matches with accumulated coarse edge weights. When false every
  /// level is matched as if it had unit weights.
  bool weighted_matching = true;
};

/// Greedy matching visiting nodes in `order`. An unmatched node pairs with
/// the unmatched neighbour maximising w(i,j) * (1/d_i + 1/d_j) (weighted
/// degrees; ties to the smallest index) or stays a singleton. Cluster ids are
/// handed out in visiting order.
ClusterMap heavy_edge_matching(const CsrGraph& g, std::span<const NodeId> order,
                               const CoarsenOptions& options = {});

/// Same, visiting nodes in a seeded random permutation.
ClusterMap heavy_edge_matching(const CsrGraph& g, std::uint64_t seed, const CoarsenOptions& options = {});

/// Quotient graph: one node per cluster, crossing fine edges summed into
/// coarse weights, intra-cluster edges dropped.
CsrGraph coarsen_graph(const CsrGraph& g, const ClusterMap& cm);

/// Piecewise-constant prolongation F_fine[i,:] = F_coarse[cm(i),:].
Tensor interpolate(const Tensor& coarse, const ClusterMap& cm);

/// Cluster mean restriction, the averaging counterpart of interpolate().
Tensor restrict_mean(const Tensor& fine, const ClusterMap& cm);

/// Coarsening sequence G^0..G^L with maps[l] taking G^l to G^{l+1}.
struct Hierarchy {
  std::vector<CsrGraph> graphs;
  std::vector<ClusterMap> maps;
  /// Set when coarsening stopped above two nodes because a pass could not
  /// merge anything.
  bool stalled = false;

  std::size_t coarsest_level() const { return graphs.size() - 1; }
  const CsrGraph& finest() const { return graphs.front(); }
  const CsrGraph& coarsest() const { return graphs.back(); }
};

/// Coarsens while the current level has more than two nodes. Level l uses
/// the matching seed derive_seed(seed, l).
Hierarchy build_hierarchy(const CsrGraph& g, std::uint64_t seed, const CoarsenOptions& options = {});

}  // namespace gapart
