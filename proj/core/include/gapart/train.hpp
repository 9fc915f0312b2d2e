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
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "gapart/coarsen.hpp"
#include "gapart/gnn.hpp"
#include "gapart/graph.hpp"
#include "gapart/losses.hpp"
#include "gapart/tensor.hpp"

namespace gapart {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// First and second moments mirroring a ParameterSet, plus the step count.
struct AdamState {
  AdamState() = default;
  explicit AdamState(const ParameterSet& params, AdamOptions options = {});

  AdamOptions options;
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  std::int64_t step = 0;
};

/// One bias-corrected Adam update. Throws NonFiniteError (leaving state and
/// parameters untouched) when a gradient entry is NaN or Inf, and
/// std::invalid_argument on shape mismatch or lr <= 0.
void adam_step(AdamState& state, ParameterSet& params, std::span<const Matrix> grads, double lr);

struct EpochStats {
  std::int32_t epoch = 0;
  /// Mean loss over the graphs that contributed to an optimizer step.
  double mean_loss = 0.0;
  std::int32_t graphs_used = 0;
  /// Graphs dropped because their input was degenerate.
  std::int32_t graphs_skipped = 0;
  /// Batches dropped because a value became non-finite.
  std::int32_t batches_skipped = 0;
  std::int32_t steps = 0;
};

struct TrainHistory {
  std::vector<EpochStats> epochs;
};

struct TrainConfig {
  double lr = 1e-3;
  std::int32_t batch_size = 5;
  std::int32_t epochs = 1;
  std::uint64_t seed = 0;
  CoarsenOptions coarsen;
  /// Clamp on the expected volumes while training the partitioner.
  double gamma_floor = 1e-12;
  /// Adds the cardinality penalty to the partitioner loss.
  bool balanced = false;
  std::function<void(const EpochStats&)> on_epoch;
};

struct LossAndGrad {
  double loss = 0.0;
  std::vector<Matrix> grads;
};

/// Eigen residual loss of the embedding on the finest level of `h` and its
/// gradient with respect to every parameter.
LossAndGrad embedding_loss_and_grad(const EmbeddingNet& net, const Hierarchy& h);

/// Expected Ncut (optionally balanced) of the partitioner driven by
/// `features` (n x input) and its gradient with respect to the partitioner
/// parameters. The reported loss is unclamped whenever it is finite.
LossAndGrad partition_loss_and_grad(const PartitionNet& net, const Hierarchy& h, const Matrix& features,
                                    const NcutLossOptions& options = {}, bool balanced = false);

/// Trains in place. Each epoch shuffles the graphs, builds a fresh hierarchy
/// per graph, sums gradients over `batch_size` graphs and takes one Adam
/// step. Throws std::invalid_argument on an empty dataset, a bad config or a
/// disconnected graph.
TrainHistory train_embedding(EmbeddingNet& net, std::span<const CsrGraph> graphs, const TrainConfig& config);

/// Trains `net` in place on top of a frozen embedding network.
TrainHistory train_partitioner(PartitionNet& net, const EmbeddingNet& embedding, std::span<const CsrGraph> graphs,
                               const TrainConfig& config);

/// CSV with columns epoch,mean_loss,graphs,skipped_graphs,skipped_batches,steps.
void write_history_csv(const TrainHistory& history, const std::filesystem::path& path);

}  // namespace gapart
