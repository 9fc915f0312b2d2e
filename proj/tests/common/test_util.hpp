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

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "gapart/graph.hpp"
#include "gapart/random.hpp"
#include "gapart/tensor.hpp"

namespace gapart::testing {

inline Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = -1.0,
                            double hi = 1.0) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (double& v : m.values()) v = rng.uniform(lo, hi);
  return m;
}

/// Connected graph on n nodes: a random spanning tree plus extra edges.
inline CsrGraph random_connected_graph(NodeId n, std::uint64_t seed, double extra_ratio = 0.5) {
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  const auto perm = rng.permutation<NodeId>(static_cast<std::size_t>(n));
  for (NodeId i = 1; i < n; ++i) {
    edges.emplace_back(perm[i], perm[static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(i)))]);
  }
  const auto extra = static_cast<int>(extra_ratio * n);
  for (int e = 0; e < extra; ++e) {
    edges.emplace_back(static_cast<NodeId>(rng.below(n)), static_cast<NodeId>(rng.below(n)));
  }
  return from_edge_list(std::span<const std::pair<NodeId, NodeId>>(edges), n);
}

using ScalarFn = std::function<Tensor(std::span<const Tensor>)>;

/// Relative error ||g_tape - g_fd|| / max(||g_tape||, ||g_fd||) over all
/// inputs, with central differences of step h. Returns 0 when both
/// gradients vanish.
inline double gradient_error(const ScalarFn& fn, const std::vector<Matrix>& inputs, double h = 1e-6) {
  Tape tape;
  std::vector<Tensor> leaves;
  for (const auto& m : inputs) leaves.push_back(tape.leaf(m));
  tape.backward(fn(leaves));
  double diff2 = 0.0, a2 = 0.0, n2 = 0.0;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const Matrix g = tape.grad(leaves[k]);
    for (std::size_t i = 0; i < inputs[k].size(); ++i) {
      auto eval = [&](double delta) {
        std::vector<Tensor> consts;
        for (std::size_t q = 0; q < inputs.size(); ++q) {
          Matrix m = inputs[q];
          if (q == k) m.values()[i] += delta;
          consts.emplace_back(std::move(m));
        }
        return fn(consts).item();
      };
      const double fd = (eval(h) - eval(-h)) / (2 * h);
      const double ad = g.values()[i];
      diff2 += (ad - fd) * (ad - fd);
      a2 += ad * ad;
      n2 += fd * fd;
    }
  }
  const double scale = std::sqrt(std::max(a2, n2));
  if (scale < 1e-12) return std::sqrt(diff2);
  return std::sqrt(diff2) / scale;
}

/// Reduces a matrix-valued op to a scalar with fixed weights so that every
/// output entry takes part in the check.
inline Tensor weighted_sum(const Tensor& t, std::uint64_t seed = 77) {
  return sum(hadamard(t, Tensor(random_matrix(t.rows(), t.cols(), seed))));
}

}  // namespace gapart::testing
