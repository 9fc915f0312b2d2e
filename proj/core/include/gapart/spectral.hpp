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
#include "gapart/metrics.hpp"

namespace gapart {

struct EigenPair {
  double lambda = 0.0;
  /// Unit-norm eigenvector of the random-walk Laplacian I - D^{-1} A.
  std::vector<double> vector;
  /// ||L f - lambda f||_2 measured after convergence.
  double residual = 0.0;
  /// Operator applications used.
  std::int64_t matvecs = 0;
};

struct LanczosOptions {
  /// Required residual ||L f - lambda f||_2 for unit f.
  double tol = 1e-8;
  /// Largest basis before a thick restart.
  std::int32_t max_basis = 100;
  /// Ritz vectors kept across a restart.
  std::int32_t keep = 30;
  std::int32_t max_restarts = 1000;
};

/// Fiedler pair of the binary-pattern random-walk Laplacian. Runs a
/// thick-restart Lanczos iteration with full reorthogonalisation on the
/// symmetric form I - D^{-1/2} A D^{-1/2}, deflating its null vector
/// D^{1/2} 1, and maps the result back with D^{-1/2}.
///
/// The start vector is a node-index ramp with a little fixed-seed noise. On
/// graphs whose second eigenvalue is repeated (square grids, even cycles) the
/// returned vector is the part of that ramp lying in the eigenspace, so the
/// answer is reproducible and, on row-major grids, aligned with the rows.
///
/// Throws std::invalid_argument for fewer than two nodes or a disconnected
/// graph and std::runtime_error when the iteration does not converge.
EigenPair fiedler_exact(const CsrGraph& g, const LanczosOptions& options = {});

/// One candidate threshold of a sweep: S holds the `size` nodes with the
/// smallest values.
struct SweepStep {
  NodeId size = 0;
  EdgeId cut = 0;
  EdgeId volume = 0;
  double ncut = 0.0;
};

/// Ncut of every valid threshold, in increasing order of |S|. Thresholds
/// fall between consecutive distinct values of `f` only.
std::vector<SweepStep> sweep_profile(const CsrGraph& g, std::span<const double> f);

/// Minimum-Ncut threshold split S = {i : f_i < c}; S gets label 0. Ties in
/// Ncut go to the smaller S. Throws std::domain_error if f has no valid
/// threshold (constant f, or every split leaves a zero-volume side).
PartitionResult sweep_cut(const CsrGraph& g, std::span<const double> f);

/// fiedler_exact followed by sweep_cut.
PartitionResult spectral_partition(const CsrGraph& g, const LanczosOptions& options = {});

}  // namespace gapart
