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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "gapart/coarsen.hpp"
#include "test_util.hpp"

namespace gapart {
namespace {

TEST(Matching, PathOfTwo) {
  const auto cm = heavy_edge_matching(path_graph(2), 1);
  EXPECT_EQ(cm.num_coarse, 1);
  EXPECT_EQ(cm.fine_to_coarse, (std::vector<NodeId>{0, 0}));
}

TEST(Matching, TriangleEveryOrder) {
  std::vector<NodeId> order = {0, 1, 2};
  do {
    const auto cm = heavy_edge_matching(complete_graph(3), order);
    EXPECT_EQ(cm.num_coarse, 2);
    std::vector<int> sizes(2, 0);
    for (NodeId c : cm.fine_to_coarse) ++sizes[c];
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, (std::vector<int>{1, 2}));
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(Matching, PathOfFourInOrder) {
  const std::vector<NodeId> order = {0, 1, 2, 3};
  const auto cm = heavy_edge_matching(path_graph(4), order);
  EXPECT_EQ(cm.fine_to_coarse, (std::vector<NodeId>{0, 0, 1, 1}));
}

TEST(Matching, ClustersAreAdjacentPairsOrSingletons) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = testing::random_connected_graph(40, s);
    const auto cm = heavy_edge_matching(g, s + 100);
    std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(cm.num_coarse));
    for (NodeId i = 0; i < g.num_nodes(); ++i) members[cm.fine_to_coarse[i]].push_back(i);
    for (const auto& m : members) {
      ASSERT_GE(m.size(), 1u);
      ASSERT_LE(m.size(), 2u);
      if (m.size() == 2) {
        EXPECT_TRUE(g.has_edge(m[0], m[1]));
      }
    }
  }
}

TEST(Matching, RejectsBadOrder) {
  const std::vector<NodeId> order = {0, 0, 1};
  EXPECT_THROW(heavy_edge_matching(path_graph(3), order), std::invalid_argument);
}

TEST(CoarsenGraph, CrossingWeights) {
  const ClusterMap p4{{0, 0, 1, 1}, 2};
  const auto a = coarsen_graph(path_graph(4), p4);
  EXPECT_EQ(a.num_nodes(), 2);
  EXPECT_EQ(a.neighbor_weights(0)[0], 1.0);
  const ClusterMap k3{{0, 0, 1}, 2};
  EXPECT_EQ(coarsen_graph(complete_graph(3), k3).neighbor_weights(0)[0], 2.0);
  const ClusterMap c4{{0, 0, 1, 1}, 2};
  EXPECT_EQ(coarsen_graph(cycle_graph(4), c4).neighbor_weights(0)[0], 2.0);
}

TEST(Interpolate, CopiesClusterRows) {
  const ClusterMap cm{{0, 0, 1}, 2};
  const Matrix coarse{{1.5}, {-2.0}};
  EXPECT_EQ(interpolate(Tensor(coarse), cm).value(), (Matrix{{1.5}, {1.5}, {-2.0}}));
  const ClusterMap id{{0, 1, 2}, 3};
  const Matrix f{{1}, {2}, {3}};
  EXPECT_EQ(interpolate(Tensor(f), id).value(), f);
  EXPECT_THROW(interpolate(Tensor(f), cm), std::invalid_argument);
}

TEST(Interpolate, BackwardSumsClusterSizes) {
  const ClusterMap cm{{0, 0, 1, 0, 2}, 3};
  Tape tape;
  const Tensor c = tape.leaf(Matrix(3, 1));
  tape.backward(sum(interpolate(c, cm)));
  EXPECT_EQ(tape.grad(c), (Matrix{{3}, {1}, {1}}));
}

TEST(RestrictMean, InverseOfInterpolateOnCoarseValues) {
  const ClusterMap cm{{1, 0, 1, 2}, 3};
  const Matrix coarse{{4}, {5}, {6}};
  EXPECT_EQ(restrict_mean(interpolate(Tensor(coarse), cm), cm).value(), coarse);
}

TEST(Hierarchy, PathOfTwoHasOneLevel) {
  const auto h = build_hierarchy(path_graph(2), 0);
  EXPECT_EQ(h.graphs.size(), 1u);
  EXPECT_TRUE(h.maps.empty());
  EXPECT_FALSE(h.stalled);
}

TEST(Hierarchy, PathOfEight) {
  const auto h = build_hierarchy(path_graph(8), 3);
  EXPECT_GE(h.maps.size(), 2u);
  EXPECT_LE(h.coarsest().num_nodes(), 2);
}

TEST(Hierarchy, GridLevelsAndConnectivity) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto h = build_hierarchy(grid_graph(16, 16), s);
    EXPECT_GE(h.maps.size(), 6u);
    EXPECT_LE(h.maps.size(), 10u);
    EXPECT_EQ(h.coarsest().num_nodes(), 2);
    for (std::size_t l = 0; l < h.maps.size(); ++l) {
      EXPECT_TRUE(is_connected(h.graphs[l]));
      EXPECT_EQ(h.maps[l].num_fine(), h.graphs[l].num_nodes());
      EXPECT_EQ(h.maps[l].num_coarse, h.graphs[l + 1].num_nodes());
    }
  }
}

TEST(Hierarchy, StarShrinksOneNodePerLevel) {
  // Only the centre can merge, so each level removes a single node.
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 1; i < 6; ++i) e.emplace_back(0, i);
  const auto g = from_edge_list(std::span<const std::pair<NodeId, NodeId>>(e), 6);
  const auto h = build_hierarchy(g, 1);
  EXPECT_FALSE(h.stalled);
  EXPECT_EQ(h.maps.size(), 4u);
  EXPECT_EQ(h.coarsest().num_nodes(), 2);
}

TEST(Hierarchy, DeterministicPerSeed) {
  const auto g = testing::random_connected_graph(200, 5);
  const auto a = build_hierarchy(g, 11);
  const auto b = build_hierarchy(g, 11);
  EXPECT_EQ(a.maps, b.maps);
  EXPECT_EQ(a.graphs, b.graphs);
}

}  // namespace
}  // namespace gapart
