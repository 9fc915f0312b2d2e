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

#include "gapart/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gapart/random.hpp"

namespace gapart {
namespace {

using Real = long double;

// > 0 when a, b, c turn counter-clockwise.
Real orient(const Point& a, const Point& b, const Point& c) {
  return (static_cast<Real>(b.x) - a.x) * (static_cast<Real>(c.y) - a.y) -
         (static_cast<Real>(b.y) - a.y) * (static_cast<Real>(c.x) - a.x);
}

// > 0 when d lies strictly inside the circumcircle of counter-clockwise a, b, c.
Real incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Real adx = static_cast<Real>(a.x) - d.x, ady = static_cast<Real>(a.y) - d.y;
  const Real bdx = static_cast<Real>(b.x) - d.x, bdy = static_cast<Real>(b.y) - d.y;
  const Real cdx = static_cast<Real>(c.x) - d.x, cdy = static_cast<Real>(c.y) - d.y;
  const Real alift = adx * adx + ady * ady;
  const Real blift = bdx * bdx + bdy * bdy;
  const Real clift = cdx * cdx + cdy * cdy;
  return adx * (bdy * clift - cdy * blift) - ady * (bdx * clift - cdx * blift) + alift * (bdx * cdy - cdx * bdy);
}

struct Triangle {
  std::array<NodeId, 3> v{};
  double cx = 0.0, cy = 0.0, r2 = 0.0;
  bool alive = false;
};

class Triangulator {
 public:
  explicit Triangulator(std::span<const Point> pts) : pts_(pts.begin(), pts.end()) {
    double xmin = pts[0].x, xmax = xmin, ymin = pts[0].y, ymax = ymin;
    for (const auto& p : pts) {
      xmin = std::min(xmin, p.x), xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y), ymax = std::max(ymax, p.y);
    }
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double s = 1e4 * std::max({xmax - xmin, ymax - ymin, 1e-300});
    super_ = static_cast<NodeId>(pts_.size());
    pts_.push_back({cx - 2 * s, cy - s});
    pts_.push_back({cx + 2 * s, cy - s});
    pts_.push_back({cx, cy + 2 * s});
    add(super_, super_ + 1, super_ + 2);
  }

  void insert(NodeId p) {
    const Point& q = pts_[p];
    bad_.clear();
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (tris_[t].alive && inside(tris_[t], q)) bad_.push_back(t);
    }
    // Cavity boundary: directed edges of bad triangles whose twin is not bad.
    edges_.clear();
    for (auto t : bad_) {
      const auto& v = tris_[t].v;
      for (int k = 0; k < 3; ++k) edges_.push_back({v[k], v[(k + 1) % 3]});
    }
    for (auto t : bad_) {
      tris_[t].alive = false;
      free_.push_back(t);
    }
    for (const auto& e : edges_) {
      const bool shared = std::any_of(edges_.begin(), edges_.end(),
                                      [&](const auto& o) { return o[0] == e[1] && o[1] == e[0]; });
      if (!shared) add(e[0], e[1], p);
    }
  }

  std::vector<std::array<NodeId, 3>> finish() const {
    std::vector<std::array<NodeId, 3>> out;
    for (const auto& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] >= super_ || t.v[1] >= super_ || t.v[2] >= super_) continue;
      out.push_back(t.v);
    }
    return out;
  }

 private:
  void add(NodeId a, NodeId b, NodeId c) {
    Triangle t;
    t.v = {a, b, c};
    t.alive = true;
    const Point &pa = pts_[a], &pb = pts_[b], &pc = pts_[c];
    const double bx = pb.x - pa.x, by = pb.y - pa.y, cx = pc.x - pa.x, cy = pc.y - pa.y;
    const double d = 2.0 * (bx * cy - by * cx);
    const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    const double ux = (cy * b2 - by * c2) / d, uy = (bx * c2 - cx * b2) / d;
    t.cx = pa.x + ux;
    t.cy = pa.y + uy;
    t.r2 = ux * ux + uy * uy;
    if (!free_.empty()) {
      tris_[free_.back()] = t;
      free_.pop_back();
    } else {
      tris_.push_back(t);
    }
  }

  bool inside(const Triangle& t, const Point& q) const {
    const double dx = q.x - t.cx, dy = q.y - t.cy;
    const double d2 = dx * dx + dy * dy;
    const double slack = 1e-9 * t.r2;
    if (std::isfinite(t.r2)) {
      if (d2 > t.r2 + slack) return false;
      if (d2 < t.r2 - slack) return true;
    }
    return incircle(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], q) > 0;
  }

  std::vector<Point> pts_;
  NodeId super_ = 0;
  std::vector<Triangle> tris_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> bad_;
  std::vector<std::array<NodeId, 2>> edges_;
};

}  // namespace

std::vector<std::array<NodeId, 3>> delaunay_triangles(std::span<const Point> points) {
  if (points.size() < 3) throw std::invalid_argument("delaunay: need at least 3 points");
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument("delaunay: non-finite point");
  }
  {
    std::vector<Point> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) {
      return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i].x == sorted[i - 1].x && sorted[i].y == sorted[i - 1].y) {
        throw std::invalid_argument("delaunay: duplicate point");
      }
    }
  }
  const bool collinear = std::all_of(points.begin() + 2, points.end(),
                                     [&](const Point& p) { return orient(points[0], points[1], p) == 0; });
  if (collinear) throw std::domain_error("delaunay: all points are collinear");

  Triangulator tr(points);
  for (std::size_t i = 0; i < points.size(); ++i) tr.insert(static_cast<NodeId>(i));
  auto tris = tr.finish();
  if (tris.empty()) throw std::domain_error("delaunay: triangulation is empty");
  return tris;
}

CsrGraph delaunay_graph(std::span<const Point> points) {
  const auto tris = delaunay_triangles(points);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(3 * tris.size());
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) {
      const NodeId a = t[k], b = t[(k + 1) % 3];
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  // Interior edges come twice with the same orientation; drop the copy so
  // from_edge_list does not sum them into weight 2.
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return from_edge_list(std::span<const std::pair<NodeId, NodeId>>(edges), static_cast<NodeId>(points.size()));
}

CsrGraph delaunay_square(NodeId n_points, double width, double height, std::uint64_t seed) {
  if (n_points < 3) throw std::invalid_argument("delaunay_square: need at least 3 points");
  if (!(width > 0) || !(height > 0)) throw std::invalid_argument("delaunay_square: width and height must be positive");
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Rng rng(attempt == 0 ? seed : derive_seed(seed, attempt));
    std::vector<Point> pts(static_cast<std::size_t>(n_points));
    for (auto& p : pts) {
      p.x = rng.uniform(0.0, width);
      p.y = rng.uniform(0.0, height);
    }
    try {
      auto g = delaunay_graph(pts);
      if (is_connected(g)) return g;
    } catch (const std::domain_error&) {
    } catch (const std::invalid_argument&) {
      // duplicate draw
    }
  }
  throw std::runtime_error("delaunay_square: no valid triangulation after 64 draws");
}

CsrGraph grid_with_holes(NodeId rows, NodeId cols, std::span<const Rect> holes) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid_with_holes: rows and cols must be positive");
  std::vector<char> keep(static_cast<std::size_t>(rows) * cols, 1);
  for (const auto& h : holes) {
    if (h.rows < 1 || h.cols < 1 || h.row < 0 || h.col < 0 || h.row + h.rows > rows || h.col + h.cols > cols) {
      throw std::invalid_argument("grid_with_holes: hole outside the lattice");
    }
    for (NodeId r = h.row; r < h.row + h.rows; ++r) {
      for (NodeId c = h.col; c < h.col + h.cols; ++c) keep[static_cast<std::size_t>(r) * cols + c] = 0;
    }
  }
  std::vector<NodeId> id(keep.size(), -1);
  NodeId n = 0;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) id[i] = n++;
  }
  if (n == 0) throw std::invalid_argument("grid_with_holes: holes cover the whole lattice");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId r = 0; r < rows; ++r) {
    for (NodeId c = 0; c < cols; ++c) {
      const auto i = static_cast<std::size_t>(r) * cols + c;
      if (!keep[i]) continue;
      if (c + 1 < cols && keep[i + 1]) edges.emplace_back(id[i], id[i + 1]);
      if (r + 1 < rows && keep[i + cols]) edges.emplace_back(id[i], id[i + cols]);
    }
  }
  auto g = from_edge_list(std::span<const std::pair<NodeId, NodeId>>(edges), n);
  if (!is_connected(g)) throw std::invalid_argument("grid_with_holes: holes disconnect the lattice");
  return g;
}

CsrGraph l_shape(NodeId k) {
  if (k < 1) throw std::invalid_argument("l_shape: k must be positive");
  const Rect corner{0, k, k, k};
  return grid_with_holes(2 * k, 2 * k, std::span<const Rect>(&corner, 1));
}

CsrGraph hole3(NodeId u) {
  if (u < 1) throw std::invalid_argument("hole3: unit must be positive");
  const std::array<Rect, 3> holes{{{u, u, u, u}, {u, 3 * u, u, u}, {u, 5 * u, u, u}}};
  return grid_with_holes(3 * u, 7 * u, holes);
}

CsrGraph hole6(NodeId u) {
  if (u < 1) throw std::invalid_argument("hole6: unit must be positive");
  std::array<Rect, 6> holes{};
  for (int band = 0; band < 2; ++band) {
    for (int k = 0; k < 3; ++k) holes[3 * band + k] = {(2 * band + 1) * u, (2 * k + 1) * u, u, u};
  }
  return grid_with_holes(5 * u, 7 * u, holes);
}

}  // namespace gapart
