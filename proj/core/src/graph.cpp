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

#include "gapart/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gapart {

CsrGraph::CsrGraph(std::vector<EdgeId> row_ptr, std::vector<NodeId> col_idx,
                   std::vector<double> edge_weight)
    : row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)), edge_weight_(std::move(edge_weight)) {
  if (row_ptr_.empty() || row_ptr_.front() != 0) {
    throw std::invalid_argument("CsrGraph: row_ptr must start with 0");
  }
  if (col_idx_.size() != edge_weight_.size() ||
      row_ptr_.back() != static_cast<EdgeId>(col_idx_.size())) {
    throw std::invalid_argument("CsrGraph: row_ptr/col_idx/edge_weight sizes disagree");
  }
  const auto n = num_nodes();
  for (NodeId i = 0; i < n; ++i) {
    if (row_ptr_[i + 1] < row_ptr_[i]) throw std::invalid_argument("CsrGraph: row_ptr decreasing");
    for (EdgeId e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
      const NodeId j = col_idx_[e];
      if (j < 0 || j >= n) throw std::invalid_argument("CsrGraph: column index out of range");
      if (j == i) throw std::invalid_argument("CsrGraph: self-loop");
      if (e > row_ptr_[i] && col_idx_[e - 1] >= j) {
        throw std::invalid_argument("CsrGraph: row not strictly increasing");
      }
      if (!(edge_weight_[e] > 0.0) || !std::isfinite(edge_weight_[e])) {
        throw std::invalid_argument("CsrGraph: weights must be positive and finite");
      }
    }
  }
  for (NodeId i = 0; i < n; ++i) {
    for (EdgeId e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
      const NodeId j = col_idx_[e];
      const auto row = neighbors(j);
      const auto it = std::lower_bound(row.begin(), row.end(), i);
      if (it == row.end() || *it != i) throw std::invalid_argument("CsrGraph: not symmetric");
      const auto back = row_ptr_[j] + (it - row.begin());
      if (edge_weight_[back] != edge_weight_[e]) {
        throw std::invalid_argument("CsrGraph: asymmetric weights");
      }
    }
  }
}

bool CsrGraph::has_edge(NodeId i, NodeId j) const {
  const auto row = neighbors(i);
  return std::binary_search(row.begin(), row.end(), j);
}

CsrGraph from_edge_list(std::span<const WeightedEdge> edges, NodeId n) {
  if (n <= 0) throw std::invalid_argument("from_edge_list: graph needs at least one node");
  struct Entry {
    NodeId u, v;
    double w;
  };
  std::vector<Entry> fwd;
  fwd.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw std::invalid_argument("from_edge_list: node index out of range (" + std::to_string(e.u) +
                                  "," + std::to_string(e.v) + ") for n=" + std::to_string(n));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("from_edge_list: weights must be positive and finite");
    }
    if (e.u == e.v) continue;
    fwd.push_back({e.u, e.v, e.weight});
  }
  std::sort(fwd.begin(), fwd.end(),
            [](const Entry& a, const Entry& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  // Merge duplicates of the same directed pair.
  std::vector<Entry> merged;
  merged.reserve(fwd.size());
  for (const auto& e : fwd) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().w += e.w;
    } else {
      merged.push_back(e);
    }
  }
  // A pair given in both directions keeps the weight of its u<v record; a
  // pair given one way only gets that weight on both sides.
  const auto directed_less = [](const Entry& x, const Entry& y) {
    return x.u != y.u ? x.u < y.u : x.v < y.v;
  };
  std::vector<Entry> pairs;
  pairs.reserve(merged.size());
  for (const auto& e : merged) {
    if (e.u < e.v) {
      pairs.push_back(e);
    } else if (!std::binary_search(merged.begin(), merged.end(), Entry{e.v, e.u, 0.0}, directed_less)) {
      pairs.push_back({e.v, e.u, e.w});
    }
  }

  std::vector<EdgeId> row_ptr(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& p : pairs) {
    ++row_ptr[p.u + 1];
    ++row_ptr[p.v + 1];
  }
  for (NodeId i = 0; i < n; ++i) row_ptr[i + 1] += row_ptr[i];
  std::vector<NodeId> col(static_cast<std::size_t>(row_ptr[n]));
  std::vector<double> wt(col.size());
  std::vector<EdgeId> fill(row_ptr.begin(), row_ptr.end() - 1);
  for (const auto& p : pairs) {
    col[fill[p.u]] = p.v;
    wt[fill[p.u]++] = p.w;
    col[fill[p.v]] = p.u;
    wt[fill[p.v]++] = p.w;
  }
  for (NodeId i = 0; i < n; ++i) {
    // The reverse side of each pair lands out of column order.
    const auto b = row_ptr[i], e = row_ptr[i + 1];
    std::vector<std::pair<NodeId, double>> row;
    row.reserve(static_cast<std::size_t>(e - b));
    for (auto k = b; k < e; ++k) row.emplace_back(col[k], wt[k]);
    std::sort(row.begin(), row.end());
    for (auto k = b; k < e; ++k) {
      col[k] = row[k - b].first;
      wt[k] = row[k - b].second;
    }
  }
  return CsrGraph(std::move(row_ptr), std::move(col), std::move(wt));
}

CsrGraph from_edge_list(std::span<const std::pair<NodeId, NodeId>> edges, NodeId n) {
  std::vector<WeightedEdge> w;
  w.reserve(edges.size());
  for (const auto& [u, v] : edges) w.push_back({u, v, 1.0});
  return from_edge_list(std::span<const WeightedEdge>(w), n);
}

std::vector<WeightedEdge> edges_of(const CsrGraph& g) {
  std::vector<WeightedEdge> out;
  out.reserve(static_cast<std::size_t>(g.num_edges()));
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    const auto nb = g.neighbors(i);
    const auto w = g.neighbor_weights(i);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] > i) out.push_back({i, nb[k], w[k]});
    }
  }
  return out;
}

std::vector<double> degrees(const CsrGraph& g) {
  std::vector<double> d(static_cast<std::size_t>(g.num_nodes()), 0.0);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    for (double w : g.neighbor_weights(i)) d[i] += w;
  }
  return d;
}

std::vector<double> pattern_degrees(const CsrGraph& g) {
  std::vector<double> d(static_cast<std::size_t>(g.num_nodes()));
  for (NodeId i = 0; i < g.num_nodes(); ++i) d[i] = g.degree(i);
  return d;
}

std::vector<NodeId> connected_components(const CsrGraph& g, NodeId* num_components) {
  const NodeId n = g.num_nodes();
  std::vector<NodeId> comp(static_cast<std::size_t>(n), -1);
  NodeId count = 0;
  std::vector<NodeId> queue;
  queue.reserve(static_cast<std::size_t>(n));
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    queue.clear();
    queue.push_back(s);
    comp[s] = count;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId j : g.neighbors(queue[head])) {
        if (comp[j] < 0) {
          comp[j] = count;
          queue.push_back(j);
        }
      }
    }
    ++count;
  }
  if (num_components) *num_components = count;
  return comp;
}

bool is_connected(const CsrGraph& g) {
  if (g.num_nodes() == 0) return false;
  NodeId count = 0;
  connected_components(g, &count);
  return count == 1;
}

CsrGraph induced_subgraph(const CsrGraph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) throw std::invalid_argument("induced_subgraph: empty node set");
  std::vector<NodeId> old_to_new(static_cast<std::size_t>(g.num_nodes()), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (old_to_new[nodes[k]] >= 0) throw std::invalid_argument("induced_subgraph: duplicate node");
    old_to_new[nodes[k]] = static_cast<NodeId>(k);
  }
  std::vector<WeightedEdge> edges;
  for (NodeId old : nodes) {
    const auto nb = g.neighbors(old);
    const auto w = g.neighbor_weights(old);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] > old && old_to_new[nb[k]] >= 0) edges.push_back({old_to_new[old], old_to_new[nb[k]], w[k]});
    }
  }
  return from_edge_list(std::span<const WeightedEdge>(edges), static_cast<NodeId>(nodes.size()));
}

ComponentExtraction largest_connected_component(const CsrGraph& g) {
  if (g.num_nodes() == 0) throw std::invalid_argument("largest_connected_component: empty graph");
  NodeId count = 0;
  const auto comp = connected_components(g, &count);
  std::vector<NodeId> size(static_cast<std::size_t>(count), 0);
  for (NodeId c : comp) ++size[c];
  // Components are numbered by smallest member, so max_element picks the
  // lowest-indexed component among equals.
  const auto best = static_cast<NodeId>(std::max_element(size.begin(), size.end()) - size.begin());
  ComponentExtraction out;
  out.old_to_new.assign(static_cast<std::size_t>(g.num_nodes()), -1);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (comp[i] == best) {
      out.old_to_new[i] = static_cast<NodeId>(out.new_to_old.size());
      out.new_to_old.push_back(i);
    }
  }
  if (count == 1) {
    out.graph = g;
  } else {
    out.graph = induced_subgraph(g, out.new_to_old);
  }
  return out;
}

CsrGraph permute_nodes(const CsrGraph& g, std::span<const NodeId> perm) {
  if (static_cast<NodeId>(perm.size()) != g.num_nodes()) {
    throw std::invalid_argument("permute_nodes: permutation size mismatch");
  }
  auto edges = edges_of(g);
  for (auto& e : edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  return from_edge_list(std::span<const WeightedEdge>(edges), g.num_nodes());
}

CsrGraph path_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return from_edge_list(std::span<const std::pair<NodeId, NodeId>>(e), n);
}

CsrGraph cycle_graph(NodeId n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return from_edge_list(std::span<const std::pair<NodeId, NodeId>>(e), n);
}

CsrGraph complete_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return from_edge_list(std::span<const std::pair<NodeId, NodeId>>(e), n);
}

CsrGraph grid_graph(NodeId rows, NodeId cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("grid_graph: empty grid");
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId r = 0; r < rows; ++r) {
    for (NodeId c = 0; c < cols; ++c) {
      const NodeId i = r * cols + c;
      if (c + 1 < cols) e.emplace_back(i, i + 1);
      if (r + 1 < rows) e.emplace_back(i, i + cols);
    }
  }
  return from_edge_list(std::span<const std::pair<NodeId, NodeId>>(e), rows * cols);
}

}  // namespace gapart
