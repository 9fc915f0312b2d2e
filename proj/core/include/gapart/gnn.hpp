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
#include <string>
#include <vector>

#include "gapart/coarsen.hpp"
#include "gapart/graph.hpp"
#include "gapart/tensor.hpp"

namespace gapart {

/// Named trainable arrays in a fixed layer order.
struct ParameterSet {
  std::vector<std::string> names;
  std::vector<Matrix> values;

  std::size_t size() const { return values.size(); }
  /// Number of scalar parameters.
  std::size_t count() const;
  std::size_t index_of(const std::string& name) const;

  friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

/// Tensors for every parameter: tape leaves when `tape` is given, otherwise
/// untracked constants.
std::vector<Tensor> bind(const ParameterSet& params, Tape* tape);

/// F W_root + bias + mean_{j in N(i)} F_j W_neigh. No activation.
Tensor sage_forward(const CsrGraph& g, const Tensor& f, const Tensor& w_root, const Tensor& w_neigh,
                    const Tensor& bias);

/// F W + bias.
Tensor linear_forward(const Tensor& f, const Tensor& w, const Tensor& bias);

struct EmbeddingPlan {
  std::int32_t input = 2;
  std::int32_t hidden = 32;
  std::int32_t smoothing = 2;
  /// Output widths of the linear stack; the last one is the embedding width.
  std::vector<std::int32_t> linear = {16, 32, 32, 2};

  friend bool operator==(const EmbeddingPlan&, const EmbeddingPlan&) = default;
};

struct PartitionPlan {
  std::int32_t input = 1;
  std::int32_t hidden = 16;
  std::int32_t pre = 2;
  std::int32_t coarse = 1;
  std::int32_t post = 2;
  /// Output widths of the linear stack; the last one is the number of parts.
  std::vector<std::int32_t> linear = {16, 16, 16, 2};

  friend bool operator==(const PartitionPlan&, const PartitionPlan&) = default;
};

/// Multilevel spectral embedding network. One coarse SAGE layer, `smoothing`
/// SAGE layers shared by every level and a linear head, followed by QR.
struct EmbeddingNet {
  EmbeddingPlan plan;
  ParameterSet params;

  /// Zero-initialised network with the layout of `plan`.
  explicit EmbeddingNet(EmbeddingPlan plan = {});
  /// Weights and biases uniform in +-1/sqrt(fan_in), drawn in layer order.
  static EmbeddingNet initialized(std::uint64_t seed, EmbeddingPlan plan = {});
  std::size_t num_parameters() const { return params.count(); }
};

/// Multilevel partitioning network with pre-, coarse- and post-smoothing
/// SAGE layers shared across levels and a softmax head.
struct PartitionNet {
  PartitionPlan plan;
  ParameterSet params;

  explicit PartitionNet(PartitionPlan plan = {});
  static PartitionNet initialized(std::uint64_t seed, PartitionPlan plan = {});
  std::size_t num_parameters() const { return params.count(); }
  std::int32_t num_parts() const { return plan.linear.back(); }
};

/// n x plan.linear.back() embedding with orthonormal columns. `weights` come
/// from bind(net.params, ...). The hierarchy graphs must outlive any backward
/// sweep over the result.
Tensor embedding_forward(const EmbeddingNet& net, std::span<const Tensor> weights, const Hierarchy& h);
/// Inference convenience: binds constants.
Tensor embedding_forward(const EmbeddingNet& net, const Hierarchy& h);

/// n x g part probabilities for node features `f` (n x plan.input).
Tensor partition_forward(const PartitionNet& net, std::span<const Tensor> weights, const Hierarchy& h,
                         const Tensor& f);
Tensor partition_forward(const PartitionNet& net, const Hierarchy& h, const Tensor& f);

/// sqrt(n) (f - mean(f)) for column `column` of `embedding`. Throws
/// std::domain_error when that column is constant.
std::vector<double> standardize_fiedler(const Matrix& embedding, std::size_t column = 1);

}  // namespace gapart
