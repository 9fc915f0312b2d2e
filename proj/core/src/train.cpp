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

#include "gapart/train.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <string>

#include "gapart/io.hpp"
#include "gapart/random.hpp"

namespace gapart {
namespace {

constexpr std::uint64_t kShuffleStream = 1;
constexpr std::uint64_t kHierarchyStream = 2;

void check_config(const TrainConfig& c, std::size_t n_graphs) {
  if (n_graphs == 0) throw std::invalid_argument("train: empty dataset");
  if (!(c.lr > 0) || !std::isfinite(c.lr)) throw std::invalid_argument("train: lr must be positive");
  if (c.batch_size < 1) throw std::invalid_argument("train: batch_size must be >= 1");
  if (c.epochs < 0) throw std::invalid_argument("train: epochs must be >= 0");
}

void check_graphs(std::span<const CsrGraph> graphs) {
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    if (graphs[k].num_nodes() < 2 || !is_connected(graphs[k])) {
      throw std::invalid_argument("train: graph " + std::to_string(k) + " is not connected with >= 2 nodes");
    }
  }
}

std::vector<Matrix> zeros_like(const ParameterSet& params) {
  std::vector<Matrix> out;
  out.reserve(params.size());
  for (const auto& m : params.values) out.emplace_back(m.rows(), m.cols());
  return out;
}

LossAndGrad collect(Tape& tape, const Tensor& loss, const std::vector<Tensor>& weights) {
  tape.backward(loss);
  LossAndGrad out;
  out.loss = loss.item();
  out.grads.reserve(weights.size());
  for (const auto& w : weights) out.grads.push_back(tape.grad(w));
  return out;
}

// Shared epoch/batch loop. `compute(epoch, graph)` returns the loss and
// gradient for one graph; std::domain_error skips that graph and
// NonFiniteError drops the whole batch.
template <typename Compute>
TrainHistory run(ParameterSet& params, std::size_t n_graphs, const TrainConfig& config, Compute&& compute) {
  AdamState adam(params);
  TrainHistory history;
  const auto batch = static_cast<std::size_t>(config.batch_size);
  for (std::int32_t epoch = 0; epoch < config.epochs; ++epoch) {
    Rng rng(derive_seed(derive_seed(config.seed, kShuffleStream), static_cast<std::uint64_t>(epoch)));
    const auto order = rng.permutation<std::size_t>(n_graphs);
    EpochStats stats;
    stats.epoch = epoch;
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < n_graphs; start += batch) {
      const std::size_t stop = std::min(n_graphs, start + batch);
      auto grads = zeros_like(params);
      double batch_loss = 0.0;
      std::int32_t used = 0;
      bool ok = true;
      for (std::size_t k = start; k < stop && ok; ++k) {
        try {
          const LossAndGrad lg = compute(epoch, order[k]);
          if (!std::isfinite(lg.loss)) throw NonFiniteError("train: non-finite loss");
          for (std::size_t p = 0; p < grads.size(); ++p) grads[p] += lg.grads[p];
          batch_loss += lg.loss;
          ++used;
        } catch (const NonFiniteError&) {
          ok = false;
        } catch (const std::domain_error&) {
          ++stats.graphs_skipped;
        }
      }
      if (!ok) {
        ++stats.batches_skipped;
        continue;
      }
      if (used == 0) continue;
      try {
        adam_step(adam, params, grads, config.lr);
      } catch (const NonFiniteError&) {
        ++stats.batches_skipped;
        continue;
      }
      ++stats.steps;
      stats.graphs_used += used;
      loss_sum += batch_loss;
    }
    stats.mean_loss = stats.graphs_used > 0 ? loss_sum / stats.graphs_used : std::nan("");
    history.epochs.push_back(stats);
    if (config.on_epoch) config.on_epoch(stats);
  }
  return history;
}

std::uint64_t hierarchy_seed(const TrainConfig& c, std::int32_t epoch, std::size_t graph) {
  return derive_seed(derive_seed(c.seed, kHierarchyStream), static_cast<std::uint64_t>(epoch),
                     static_cast<std::uint64_t>(graph));
}

}  // namespace

AdamState::AdamState(const ParameterSet& params, AdamOptions opts) : options(opts), m(zeros_like(params)), v(m) {}

void adam_step(AdamState& state, ParameterSet& params, std::span<const Matrix> grads, double lr) {
  if (!(lr > 0)) throw std::invalid_argument("adam_step: lr must be positive");
  if (grads.size() != params.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
    throw std::invalid_argument("adam_step: gradient count does not match parameters");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    if (!grads[k].same_shape(params.values[k]) || !state.m[k].same_shape(params.values[k])) {
      throw std::invalid_argument("adam_step: shape mismatch for '" + params.names[k] + "'");
    }
    for (double g : grads[k].values()) {
      if (!std::isfinite(g)) throw NonFiniteError("adam_step: non-finite gradient for '" + params.names[k] + "'");
    }
  }
  const auto& o = state.options;
  ++state.step;
  const double c1 = 1.0 - std::pow(o.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(o.beta2, static_cast<double>(state.step));
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto p = params.values[k].values();
    auto m = state.m[k].values();
    auto v = state.v[k].values();
    const auto g = grads[k].values();
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = o.beta1 * m[i] + (1.0 - o.beta1) * g[i];
      v[i] = o.beta2 * v[i] + (1.0 - o.beta2) * g[i] * g[i];
      p[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + o.eps);
    }
  }
}

LossAndGrad embedding_loss_and_grad(const EmbeddingNet& net, const Hierarchy& h) {
  Tape tape;
  const auto weights = bind(net.params, &tape);
  const Tensor f = embedding_forward(net, weights, h);
  return collect(tape, eigen_residual_loss(h.finest(), f), weights);
}

LossAndGrad partition_loss_and_grad(const PartitionNet& net, const Hierarchy& h, const Matrix& features,
                                    const NcutLossOptions& options, bool balanced) {
  Tape tape;
  const auto weights = bind(net.params, &tape);
  const Tensor y = partition_forward(net, weights, h, Tensor(features));
  const Tensor loss = balanced ? balanced_ncut_loss(h.finest(), y, options) : expected_ncut_loss(h.finest(), y, options);
  LossAndGrad out = collect(tape, loss, weights);
  if (options.gamma_floor > 0) {
    try {
      const Tensor plain(y.value());
      const Tensor unclamped =
          balanced ? balanced_ncut_loss(h.finest(), plain) : expected_ncut_loss(h.finest(), plain);
      out.loss = unclamped.item();
    } catch (const std::domain_error&) {
      // An empty expected part: keep the clamped value.
    }
  }
  return out;
}

TrainHistory train_embedding(EmbeddingNet& net, std::span<const CsrGraph> graphs, const TrainConfig& config) {
  check_config(config, graphs.size());
  check_graphs(graphs);
  return run(net.params, graphs.size(), config, [&](std::int32_t epoch, std::size_t k) {
    const Hierarchy h = build_hierarchy(graphs[k], hierarchy_seed(config, epoch, k), config.coarsen);
    return embedding_loss_and_grad(net, h);
  });
}

TrainHistory train_partitioner(PartitionNet& net, const EmbeddingNet& embedding, std::span<const CsrGraph> graphs,
                               const TrainConfig& config) {
  check_config(config, graphs.size());
  check_graphs(graphs);
  if (net.plan.input != 1) throw std::invalid_argument("train_partitioner: partitioner must take one input channel");
  NcutLossOptions loss_options;
  loss_options.gamma_floor = config.gamma_floor;
  return run(net.params, graphs.size(), config, [&](std::int32_t epoch, std::size_t k) {
    const Hierarchy h = build_hierarchy(graphs[k], hierarchy_seed(config, epoch, k), config.coarsen);
    const auto fiedler = standardize_fiedler(embedding_forward(embedding, h).value());
    return partition_loss_and_grad(net, h, Matrix::column(fiedler), loss_options, config.balanced);
  });
}

void write_history_csv(const TrainHistory& history, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << "epoch,mean_loss,graphs,skipped_graphs,skipped_batches,steps\n" << std::setprecision(17);
  for (const auto& e : history.epochs) {
    out << e.epoch << ',' << e.mean_loss << ',' << e.graphs_used << ',' << e.graphs_skipped << ','
        << e.batches_skipped << ',' << e.steps << '\n';
  }
  if (!out) throw FormatError("failed writing " + path.string());
}

}  // namespace gapart
