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

#include "gapart/coarsen.hpp"

#include <stdexcept>

#include "gapart/random.hpp"

namespace gapart {

ClusterMap heavy_edge_matching(const CsrGraph& g, std::span<const NodeId> order, const CoarsenOptions& options) {
  const NodeId n = g.num_nodes();
  if (n < 1) throw std::invalid_argument("heavy_edge_matching: empty graph");
  if (static_cast<NodeId>(order.size()) != n) throw std::invalid_argument("heavy_edge_matching: order size != nodes");
  {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (NodeId i : order) {
      if (i < 0 || i >= n || seen[i]) throw std::invalid_argument("heavy_edge_matching: order is not a permutation");
      seen[i] = 1;
    }
  }
  const auto deg = options.weighted_matching ? degrees(g) : pattern_degrees(g);

  ClusterMap cm;
  cm.fine_to_coarse.assign(static_cast<std::size_t>(n), -1);
  for (NodeId i : order) {
    if (cm.fine_to_coarse[i] >= 0) continue;
    NodeId best = -1;
    double best_score = 0.0;
    const auto nb = g.neighbors(i);
    const auto w = g.neighbor_weights(i);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const NodeId j = nb[k];
      if (cm.fine_to_coarse[j] >= 0) continue;
      const double wij = options.weighted_matching ? w[k] : 1.0;
      const double score = wij * (1.0 / deg[i] + 1.0 / deg[j]);
      // Rows are sorted, so strict '>' keeps the smallest index among ties.
      if (best < 0 || score > best_score) {
        best = j;
        best_score = score;
      }
    }
    cm.fine_to_coarse[i] = cm.num_coarse;
    if (best >= 0) cm.fine_to_coarse[best] = cm.num_coarse;
    ++cm.num_coarse;
  }
  return cm;
}

ClusterMap heavy_edge_matching(const CsrGraph& g, std::uint64_t seed, const CoarsenOptions& options) {
  Rng rng(seed);
  const auto order = rng.permutation<NodeId>(static_cast<std::size_t>(g.num_nodes()));
  return heavy_edge_matching(g, order, options);
}

CsrGraph coarsen_graph(const CsrGraph& g, const ClusterMap& cm) {
  if (cm.num_fine() != g.num_nodes()) throw std::invalid_argument("coarsen_graph: cluster map does not fit graph");
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(g.num_edges()));
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    const auto nb = g.neighbors(i);
    const auto w = g.neighbor_weights(i);
    const NodeId a = cm.fine_to_coarse[i];
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] < i) continue;
      const NodeId b = cm.fine_to_coarse[nb[k]];
      // Oriented a<b so that from_edge_list sums duplicates instead of
      // treating (a,b) and (b,a) as one symmetric pair.
      if (a != b) edges.push_back({std::min(a, b), std::max(a, b), w[k]});
    }
  }
  return from_edge_list(std::span<const WeightedEdge>(edges), cm.num_coarse);
}

Tensor interpolate(const Tensor& coarse, const ClusterMap& cm) {
  if (static_cast<NodeId>(coarse.rows()) != cm.num_coarse) {
    throw std::invalid_argument("interpolate: coarse rows " + std::to_string(coarse.rows()) + " != clusters " +
                                std::to_string(cm.num_coarse));
  }
  return gather_rows(coarse, cm.fine_to_coarse);
}

Tensor restrict_mean(const Tensor& fine, const ClusterMap& cm) {
  return pool_mean(fine, cm.fine_to_coarse, static_cast<std::size_t>(cm.num_coarse));
}

Hierarchy build_hierarchy(const CsrGraph& g, std::uint64_t seed, const CoarsenOptions& options) {
  if (g.num_nodes() < 1) throw std::invalid_argument("build_hierarchy: empty graph");
  Hierarchy h;
  h.graphs.push_back(g);
  while (h.graphs.back().num_nodes() > 2) {
    const auto& fine = h.graphs.back();
    auto cm = heavy_edge_matching(fine, derive_seed(seed, h.maps.size()), options);
    if (cm.num_coarse == fine.num_nodes()) {
      h.stalled = true;
      break;
    }
    auto coarse = coarsen_graph(fine, cm);
    h.maps.push_back(std::move(cm));
    h.graphs.push_back(std::move(coarse));
  }
  return h;
}

}  // namespace gapart
