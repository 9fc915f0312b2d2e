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
#include <set>

#include "gapart/mesh.hpp"

namespace gapart {
namespace {

std::set<std::pair<NodeId, NodeId>> edge_set(const CsrGraph& g) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const auto& e : edges_of(g)) out.emplace(e.u, e.v);
  return out;
}

TEST(Delaunay, ThreePointsGiveTriangle) {
  const std::vector<Point> p = {{0, 0}, {1, 0}, {0.3, 0.8}};
  EXPECT_EQ(delaunay_graph(p), complete_graph(3));
  const auto tris = delaunay_triangles(p);
  ASSERT_EQ(tris.size(), 1u);
}

TEST(Delaunay, ConvexQuadHasOneDiagonal) {
  const std::vector<Point> p = {{0, 0}, {1, 0.1}, {1.1, 1}, {0.1, 0.9}};
  const auto g = delaunay_graph(p);
  EXPECT_EQ(g.num_edges(), 5);
  for (NodeId i = 0; i < 4; ++i) EXPECT_TRUE(g.has_edge(i, (i + 1) % 4));
}

TEST(Delaunay, MatchesReferenceTriangulation) {
  // Edge set from scipy.spatial.Delaunay on the same points.
  const std::vector<Point> p = {{0.1, 0.2},  {0.9, 0.1},  {0.5, 0.9},  {0.3, 0.55}, {0.75, 0.6},
                                {0.2, 0.95}, {0.95, 0.85}, {0.55, 0.3}, {0.05, 0.7}, {0.6, 0.05}};
  const std::set<std::pair<NodeId, NodeId>> expected = {
      {0, 3}, {0, 7}, {0, 8}, {0, 9}, {1, 4}, {1, 6}, {1, 7}, {1, 9}, {2, 3}, {2, 4}, {2, 5},
      {2, 6}, {3, 4}, {3, 5}, {3, 7}, {3, 8}, {4, 6}, {4, 7}, {5, 6}, {5, 8}, {7, 9}};
  EXPECT_EQ(edge_set(delaunay_graph(p)), expected);
}

TEST(Delaunay, TrianglesAreCounterClockwiseAndEmpty) {
  const auto g = delaunay_square(300, 1.0, 1.0, 4);
  EXPECT_EQ(g.num_nodes(), 300);
  EXPECT_TRUE(is_connected(g));
  // Planar triangulation: |E| <= 3n - 6.
  EXPECT_LE(g.num_edges(), 3 * 300 - 6);
  const std::vector<Point> p = {{0, 0}, {2, 0}, {1, 1.5}, {1, 0.4}, {0.2, 1.1}, {1.8, 1.2}};
  for (const auto& t : delaunay_triangles(p)) {
    const auto& a = p[t[0]];
    const auto& b = p[t[1]];
    const auto& c = p[t[2]];
    EXPECT_GT((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x), 0.0);
    for (NodeId k = 0; k < static_cast<NodeId>(p.size()); ++k) {
      if (k == t[0] || k == t[1] || k == t[2]) continue;
      const double ax = a.x - p[k].x, ay = a.y - p[k].y;
      const double bx = b.x - p[k].x, by = b.y - p[k].y;
      const double cx = c.x - p[k].x, cy = c.y - p[k].y;
      const double det = (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay) +
                         (cx * cx + cy * cy) * (ax * by - bx * ay);
      EXPECT_LE(det, 1e-12);
    }
  }
}

TEST(Delaunay, CocircularGridPoints) {
  std::vector<Point> p;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) p.push_back({static_cast<double>(c), static_cast<double>(r)});
  }
  const auto g = delaunay_graph(p);
  // Every square gets exactly one diagonal.
  EXPECT_EQ(g.num_edges(), 2 * 6 * 5 + 25);
}

TEST(Delaunay, Deterministic) {
  EXPECT_EQ(delaunay_square(1000, 1.0, 1.0, 9), delaunay_square(1000, 1.0, 1.0, 9));
  EXPECT_NE(delaunay_square(200, 1.0, 1.0, 9), delaunay_square(200, 1.0, 1.0, 10));
}

TEST(Delaunay, Errors) {
  const std::vector<Point> two = {{0, 0}, {1, 1}};
  EXPECT_THROW(delaunay_triangles(two), std::invalid_argument);
  const std::vector<Point> dup = {{0, 0}, {1, 1}, {0, 0}};
  EXPECT_THROW(delaunay_triangles(dup), std::invalid_argument);
  const std::vector<Point> line = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  EXPECT_THROW(delaunay_triangles(line), std::domain_error);
}

TEST(GridWithHoles, TwoByTwoIsFourCycle) {
  const auto g = grid_with_holes(2, 2, {});
  EXPECT_EQ(g, grid_graph(2, 2));
  EXPECT_EQ(g.num_edges(), 4);
  for (NodeId i = 0; i < 4; ++i) EXPECT_EQ(g.degree(i), 2);
}

TEST(GridWithHoles, CenterHole) {
  const std::vector<Rect> holes = {{1, 1, 2, 2}};
  const auto g = grid_with_holes(4, 4, holes);
  EXPECT_EQ(g.num_nodes(), 12);
  EXPECT_EQ(g.num_edges(), 12);
  for (NodeId i = 0; i < 12; ++i) EXPECT_EQ(g.degree(i), 2);
}

TEST(GridWithHoles, Errors) {
  const std::vector<Rect> outside = {{3, 3, 2, 2}};
  EXPECT_THROW(grid_with_holes(4, 4, outside), std::invalid_argument);
  const std::vector<Rect> splitting = {{0, 1, 3, 1}};
  EXPECT_THROW(grid_with_holes(3, 3, splitting), std::invalid_argument);
  const std::vector<Rect> all = {{0, 0, 2, 2}};
  EXPECT_THROW(grid_with_holes(2, 2, all), std::invalid_argument);
}

TEST(Families, NodeCounts) {
  for (NodeId k = 1; k <= 5; ++k) {
    const auto l = l_shape(k);
    EXPECT_EQ(l.num_nodes(), 3 * k * k);
    EXPECT_TRUE(is_connected(l));
  }
  for (NodeId u = 1; u <= 4; ++u) {
    EXPECT_EQ(hole3(u).num_nodes(), 18 * u * u);
    EXPECT_EQ(hole6(u).num_nodes(), 29 * u * u);
    EXPECT_TRUE(is_connected(hole3(u)));
    EXPECT_TRUE(is_connected(hole6(u)));
  }
}

}  // namespace
}  // namespace gapart
