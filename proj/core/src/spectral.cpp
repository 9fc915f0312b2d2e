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

#include "gapart/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "gapart/random.hpp"

namespace gapart {
namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

constexpr std::uint64_t kStartNoiseSeed = 0x5eed0f1ed1e7ULL;

// S = I - D^{-1/2} A D^{-1/2} on the binary pattern.
class NormalizedOperator {
 public:
  explicit NormalizedOperator(const CsrGraph& g) : g_(g), isd_(g.num_nodes()), null_(g.num_nodes()) {
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      const double d = g.degree(i);
      isd_[i] = 1.0 / std::sqrt(d);
      null_[i] = std::sqrt(d);
    }
    null_.normalize();
  }

  void apply(const Vec& x, Vec& y) {
    ++matvecs_;
    y.resize(x.size());
    for (NodeId i = 0; i < g_.num_nodes(); ++i) {
      double acc = 0.0;
      for (NodeId j : g_.neighbors(i)) acc += isd_[j] * x[j];
      y[i] = x[i] - isd_[i] * acc;
    }
  }

  void deflate(Vec& x) const { x -= null_.dot(x) * null_; }

  const Vec& inv_sqrt_degree() const { return isd_; }
  std::int64_t matvecs() const { return matvecs_; }

 private:
  const CsrGraph& g_;
  Vec isd_;
  Vec null_;
  std::int64_t matvecs_ = 0;
};

// ||L f - lambda f|| for the random-walk Laplacian.
double rw_residual(const CsrGraph& g, const Vec& f, double lambda) {
  double r2 = 0.0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    double mean = 0.0;
    for (NodeId j : g.neighbors(i)) mean += f[j];
    mean /= g.degree(i);
    const double r = f[i] - mean - lambda * f[i];
    r2 += r * r;
  }
  return std::sqrt(r2);
}

}  // namespace

EigenPair fiedler_exact(const CsrGraph& g, const LanczosOptions& options) {
  const NodeId n = g.num_nodes();
  if (n < 2) throw std::invalid_argument("fiedler_exact: need at least two nodes");
  if (!is_connected(g)) throw std::invalid_argument("fiedler_exact: graph is disconnected");
  if (!(options.tol > 0)) throw std::invalid_argument("fiedler_exact: tol must be positive");
  if (options.max_basis < 2 || options.keep < 1 || options.keep >= options.max_basis) {
    throw std::invalid_argument("fiedler_exact: need 1 <= keep < max_basis");
  }

  NormalizedOperator op(g);
  const Eigen::Index dim = n - 1;  // dimension of the deflated space
  const Eigen::Index m = std::min<Eigen::Index>(options.max_basis, dim);
  const Eigen::Index keep = std::min<Eigen::Index>(options.keep, std::max<Eigen::Index>(m - 1, 1));

  // Start vector: index ramp in [-1, 1] plus 1% noise, in the D^{1/2} frame.
  Vec ramp(n);
  Vec v0(n);
  {
    Rng rng(kStartNoiseSeed);
    for (NodeId i = 0; i < n; ++i) {
      ramp[i] = 2.0 * i / (n - 1) - 1.0;
      v0[i] = (ramp[i] + 0.01 * rng.uniform(-1.0, 1.0)) / op.inv_sqrt_degree()[i];
    }
  }
  op.deflate(v0);
  Rng fallback(derive_seed(kStartNoiseSeed, 1));
  auto random_direction = [&](const Mat& basis, Eigen::Index cols) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      Vec r(n);
      for (NodeId i = 0; i < n; ++i) r[i] = fallback.uniform(-1.0, 1.0);
      for (int pass = 0; pass < 2; ++pass) {
        op.deflate(r);
        if (cols > 0) r -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * r);
      }
      const double nr = r.norm();
      if (nr > 1e-8) return Vec(r / nr);
    }
    throw std::runtime_error("fiedler_exact: cannot extend the Krylov basis");
  };

  Mat basis(n, m);
  Mat proj = Mat::Zero(m, m);
  const double v0n = v0.norm();
  basis.col(0) = v0n > 1e-12 ? Vec(v0 / v0n) : random_direction(basis, 0);
  Eigen::Index j = 1;
  Vec w(n);
  Vec next(n);
  bool have_next = false;

  for (std::int32_t restart = 0; restart <= options.max_restarts; ++restart) {
    // Expand until the basis is full or spans the whole deflated space.
    while (true) {
      op.apply(basis.col(j - 1), w);
      op.deflate(w);
      for (int pass = 0; pass < 2; ++pass) {
        const Vec c = basis.leftCols(j).transpose() * w;
        w -= basis.leftCols(j) * c;
        proj.col(j - 1).head(j) += c;
      }
      op.deflate(w);
      proj.row(j - 1).head(j) = proj.col(j - 1).head(j).transpose();
      const double beta = w.norm();
      const bool breakdown = beta <= 1e-10 * std::max(1.0, proj.col(j - 1).head(j).norm());
      if (j == m) {
        have_next = !breakdown;
        if (have_next) next = w / beta;
        break;
      }
      basis.col(j) = breakdown ? random_direction(basis, j) : Vec(w / beta);
      ++j;
    }

    Eigen::SelfAdjointEigenSolver<Mat> es(proj.topLeftCorner(j, j));
    if (es.info() != Eigen::Success) throw std::runtime_error("fiedler_exact: projected eigensolve failed");
    const double theta = es.eigenvalues()[0];
    const Vec u = basis.leftCols(j) * es.eigenvectors().col(0);

    Vec f = u.cwiseProduct(op.inv_sqrt_degree());
    f.normalize();
    const double res = rw_residual(g, f, theta);
    if (res <= options.tol) {
      if (f.dot(ramp) < 0) f = -f;
      EigenPair out;
      out.lambda = theta;
      out.vector.assign(f.data(), f.data() + n);
      out.residual = res;
      out.matvecs = op.matvecs();
      return out;
    }
    if (j == dim && !have_next) {
      throw std::runtime_error("fiedler_exact: full-space residual " + std::to_string(res) + " above tolerance");
    }

    // Thick restart: keep the smallest Ritz vectors, continue from the
    // residual direction.
    const Eigen::Index k = std::min(keep, j - 1 > 0 ? j - 1 : Eigen::Index{1});
    const Mat kept = basis.leftCols(j) * es.eigenvectors().leftCols(k);
    basis.leftCols(k) = kept;
    proj.setZero();
    for (Eigen::Index i = 0; i < k; ++i) proj(i, i) = es.eigenvalues()[i];
    basis.col(k) = have_next ? next : random_direction(basis, k);
    j = k + 1;
  }
  throw std::runtime_error("fiedler_exact: no convergence after " + std::to_string(options.max_restarts) +
                           " restarts");
}

std::vector<SweepStep> sweep_profile(const CsrGraph& g, std::span<const double> f) {
  const NodeId n = g.num_nodes();
  if (static_cast<NodeId>(f.size()) != n) {
    throw std::invalid_argument("sweep: vector has " + std::to_string(f.size()) + " entries for " +
                                std::to_string(n) + " nodes");
  }
  for (double v : f) {
    if (!std::isfinite(v)) throw std::invalid_argument("sweep: non-finite entry");
  }
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return f[a] < f[b]; });

  const EdgeId total = g.num_entries();
  std::vector<char> in_s(static_cast<std::size_t>(n), 0);
  std::vector<SweepStep> steps;
  EdgeId cut_edges = 0, vol = 0;
  for (NodeId k = 0; k + 1 < n; ++k) {
    const NodeId v = order[k];
    in_s[v] = 1;
    vol += g.degree(v);
    for (NodeId u : g.neighbors(v)) cut_edges += in_s[u] ? -1 : 1;
    if (!(f[v] < f[order[k + 1]])) continue;
    if (vol == 0 || vol == total) continue;
    SweepStep s;
    s.size = k + 1;
    s.cut = cut_edges;
    s.volume = vol;
    s.ncut = static_cast<double>(cut_edges) / static_cast<double>(vol) +
             static_cast<double>(cut_edges) / static_cast<double>(total - vol);
    steps.push_back(s);
  }
  return steps;
}

PartitionResult sweep_cut(const CsrGraph& g, std::span<const double> f) {
  const auto steps = sweep_profile(g, f);
  if (steps.empty()) throw std::domain_error("sweep: no valid threshold (constant vector?)");
  const auto best = std::min_element(steps.begin(), steps.end(),
                                     [](const SweepStep& a, const SweepStep& b) { return a.ncut < b.ncut; });
  std::vector<NodeId> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return f[a] < f[b]; });
  PartitionLabels labels;
  labels.num_parts = 2;
  labels.labels.assign(f.size(), 1);
  for (NodeId k = 0; k < best->size; ++k) labels.labels[order[k]] = 0;
  return evaluate_partition(g, std::move(labels));
}

PartitionResult spectral_partition(const CsrGraph& g, const LanczosOptions& options) {
  const auto pair = fiedler_exact(g, options);
  return sweep_cut(g, pair.vector);
}

}  // namespace gapart
