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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "gapart/graph.hpp"

namespace gapart {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Delaunay triangulation by incremental Bowyer-Watson insertion. Triangles
/// index into `points` and are counter-clockwise. In-circle and orientation
/// decisions near zero are settled in extended precision.
/// Throws std::invalid_argument for fewer than 3 points or duplicate points and
/// std::domain_error when all points are collinear.
std::vector<std::array<NodeId, 3>> delaunay_triangles(std::span<const Point> points);

/// Edge graph of delaunay_triangles().
CsrGraph delaunay_graph(std::span<const Point> points);

/// Delaunay graph of n_points uniform points in [0,width] x [0,height].
/// A collinear draw is redrawn from a derived seed.
CsrGraph delaunay_square(NodeId n_points, double width, double height, std::uint64_t seed);

/// Lattice cells [row, row+rows) x [col, col+cols) to remove.
struct Rect {
  NodeId row = 0;
  NodeId col = 0;
  NodeId rows = 0;
  NodeId cols = 0;
};

/// 4-neighbour rows x cols lattice without the nodes covered by `holes`.
/// Surviving nodes are numbered row-major. Holes must lie within the lattice;
/// throws std::invalid_argument if they do not, or if the rest is disconnected
/// or empty.
CsrGraph grid_with_holes(NodeId rows, NodeId cols, std::span<const Rect> holes);

/// 2k x 2k lattice without its top-right k x k quadrant (3k^2 nodes).
CsrGraph l_shape(NodeId k);

/// 3u x 7u lattice with three u x u holes in one row.
CsrGraph hole3(NodeId u);

/// 5u x 7u lattice with six u x u holes in two rows.
CsrGraph hole6(NodeId u);

}  // namespace gapart
