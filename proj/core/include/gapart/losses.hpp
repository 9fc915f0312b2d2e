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

#include "gapart/graph.hpp"
#include "gapart/labels.hpp"
#include "gapart/tensor.hpp"

namespace gapart {

/// (I - D^{-1} A) F on the binary pattern of `g`. Throws std::domain_error
/// when `g` has an isolated node.
Tensor apply_normalized_laplacian(const CsrGraph& g, const Tensor& f);

/// Rayleigh quotients lambda_i = f_i^T L f_i, as a 1 x d tensor.
Tensor rayleigh_quotients(const CsrGraph& g, const Tensor& f);

/// ||[L f_i - lambda_i f_i]_i||_F + sum_i lambda_i with Rayleigh lambdas.
/// F is expected to have orthonormal columns.
Tensor eigen_residual_loss(const CsrGraph& g, const Tensor& f);

struct NcutLossOptions {
  /// Lower clamp on the expected volumes Gamma_k. Zero means no clamp and an
  /// error on an empty expected part.
  double gamma_floor = 0.0;
};

/// Expected normalized cut sum_k C_k / Gamma_k with
/// C_k = sum_i sum_{j in N(i)} Y_ik (1 - Y_jk) and Gamma_k = sum_i d_i Y_ik
/// (pattern degrees). Evaluated edge by edge in O(|E| g) with a fused
/// backward rule. Throws std::domain_error when some Gamma_k <= 0 and no
/// floor is set.
Tensor expected_ncut_loss(const CsrGraph& g, const Tensor& y, const NcutLossOptions& options = {});

/// sum_k (sum_i Y_ik - |V|/g)^2.
Tensor cardinality_penalty(const Tensor& y);

/// expected_ncut_loss + cardinality_penalty.
Tensor balanced_ncut_loss(const CsrGraph& g, const Tensor& y, const NcutLossOptions& options = {});

/// n x g indicator matrix of a labelling.
Matrix one_hot(const PartitionLabels& labels);

}  // namespace gapart
