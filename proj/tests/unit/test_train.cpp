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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "gapart/train.hpp"
#include "test_util.hpp"

namespace gapart {
namespace {

ParameterSet scalar_params(std::vector<double> v) {
  ParameterSet p;
  p.names = {"p"};
  p.values.emplace_back(1, v.size(), std::move(v));
  return p;
}

TEST(Adam, FirstStepClosedForm) {
  auto p = scalar_params({0.0});
  AdamState s(p);
  const std::vector<Matrix> g = {Matrix{{1.0}}};
  adam_step(s, p, g, 1e-3);
  EXPECT_NEAR(p.values[0](0, 0), -1e-3 / (1.0 + 1e-8), 1e-18);
  EXPECT_EQ(s.step, 1);
}

TEST(Adam, ZeroGradientLeavesParameters) {
  auto p = scalar_params({1.5, -2.0});
  AdamState s(p);
  const std::vector<Matrix> g = {Matrix(1, 2)};
  for (int k = 0; k < 100; ++k) adam_step(s, p, g, 1e-2);
  EXPECT_EQ(p.values[0], (Matrix{{1.5, -2.0}}));
}

TEST(Adam, MatchesReferenceOptimizer) {
  // Three steps of torch.optim.Adam(lr=1e-2) from [1, -2].
  auto p = scalar_params({1.0, -2.0});
  AdamState s(p);
  for (const Matrix& g : {Matrix{{0.5, -1.0}}, Matrix{{0.1, 2.0}}, Matrix{{-0.3, 0.0}}}) {
    const std::vector<Matrix> grads = {g};
    adam_step(s, p, grads, 1e-2);
  }
  EXPECT_NEAR(p.values[0](0, 0), 0.9798624611763509, 1e-15);
  EXPECT_NEAR(p.values[0](0, 1), -1.996491026200093, 1e-15);
}

TEST(Adam, NonFiniteGradientLeavesStateUntouched) {
  auto p = scalar_params({1.0, 2.0});
  AdamState s(p);
  const std::vector<Matrix> bad = {Matrix{{0.1, std::numeric_limits<double>::quiet_NaN()}}};
  EXPECT_THROW(adam_step(s, p, bad, 1e-3), NonFiniteError);
  EXPECT_EQ(s.step, 0);
  EXPECT_EQ(p.values[0], (Matrix{{1.0, 2.0}}));
  EXPECT_EQ(s.m[0], Matrix(1, 2));
  const std::vector<Matrix> wrong_shape = {Matrix(2, 1)};
  EXPECT_THROW(adam_step(s, p, wrong_shape, 1e-3), std::invalid_argument);
  const std::vector<Matrix> ok = {Matrix(1, 2)};
  EXPECT_THROW(adam_step(s, p, ok, 0.0), std::invalid_argument);
}

TEST(Gradients, BatchSumEqualsFiniteDifferenceOfSummedLoss) {
  const auto net = EmbeddingNet::initialized(5);
  const auto g1 = testing::random_connected_graph(7, 1);
  const auto g2 = testing::random_connected_graph(9, 2);
  const auto h1 = build_hierarchy(g1, 3);
  const auto h2 = build_hierarchy(g2, 4);
  const auto a = embedding_loss_and_grad(net, h1);
  const auto b = embedding_loss_and_grad(net, h2);
  // Central differences of the summed loss on a sample of parameters.
  auto summed = [&](const EmbeddingNet& n) {
    return eigen_residual_loss(h1.finest(), embedding_forward(n, h1)).item() +
           eigen_residual_loss(h2.finest(), embedding_forward(n, h2)).item();
  };
  EXPECT_NEAR(a.loss + b.loss, summed(net), 1e-14);
  const double h = 1e-6;
  for (std::size_t k = 0; k < net.params.size(); ++k) {
    for (std::size_t i = 0; i < net.params.values[k].size(); i += 37) {
      EmbeddingNet plus = net, minus = net;
      plus.params.values[k].values()[i] += h;
      minus.params.values[k].values()[i] -= h;
      const double fd = (summed(plus) - summed(minus)) / (2 * h);
      const double ad = a.grads[k].values()[i] + b.grads[k].values()[i];
      EXPECT_NEAR(ad, fd, 1e-6 * std::max(1.0, std::abs(fd))) << net.params.names[k] << "[" << i << "]";
    }
  }
}

TEST(TrainEmbedding, PathOfTwoApproachesSpectralSum) {
  auto net = EmbeddingNet::initialized(1);
  const std::vector<CsrGraph> data = {path_graph(2)};
  TrainConfig cfg;
  cfg.epochs = 50;
  cfg.lr = 1e-2;
  const auto hist = train_embedding(net, data, cfg);
  ASSERT_EQ(hist.epochs.size(), 50u);
  EXPECT_GE(hist.epochs.back().mean_loss, 2.0 - 1e-12);
  EXPECT_LT(hist.epochs.back().mean_loss, hist.epochs.front().mean_loss);
  EXPECT_LT(hist.epochs.back().mean_loss, 2.05);
}

TEST(TrainEmbedding, BatchingArithmetic) {
  auto net = EmbeddingNet::initialized(2);
  std::vector<CsrGraph> data;
  for (std::uint64_t s = 0; s < 5; ++s) data.push_back(testing::random_connected_graph(15, s));
  TrainConfig cfg;
  cfg.epochs = 3;
  for (const auto& e : train_embedding(net, data, cfg).epochs) {
    EXPECT_EQ(e.steps, 1);
    EXPECT_EQ(e.graphs_used, 5);
  }
  data.push_back(grid_graph(3, 3));
  cfg.epochs = 1;
  EXPECT_EQ(train_embedding(net, data, cfg).epochs[0].steps, 2);
}

TEST(TrainEmbedding, SeededRerunIsIdentical) {
  std::vector<CsrGraph> data;
  for (std::uint64_t s = 0; s < 7; ++s) data.push_back(testing::random_connected_graph(20, s));
  TrainConfig cfg;
  cfg.epochs = 4;
  cfg.seed = 9;
  auto a = EmbeddingNet::initialized(3);
  auto b = EmbeddingNet::initialized(3);
  const auto ha = train_embedding(a, data, cfg);
  const auto hb = train_embedding(b, data, cfg);
  EXPECT_EQ(a.params, b.params);
  for (std::size_t e = 0; e < ha.epochs.size(); ++e) EXPECT_EQ(ha.epochs[e].mean_loss, hb.epochs[e].mean_loss);
  cfg.seed = 10;
  auto c = EmbeddingNet::initialized(3);
  train_embedding(c, data, cfg);
  EXPECT_NE(a.params, c.params);
}

TEST(TrainEmbedding, Errors) {
  auto net = EmbeddingNet::initialized(1);
  TrainConfig cfg;
  EXPECT_THROW(train_embedding(net, {}, cfg), std::invalid_argument);
  const std::vector<std::pair<NodeId, NodeId>> e = {{0, 1}, {2, 3}};
  const std::vector<CsrGraph> disconnected = {from_edge_list(std::span<const std::pair<NodeId, NodeId>>(e), 4)};
  EXPECT_THROW(train_embedding(net, disconnected, cfg), std::invalid_argument);
  const std::vector<CsrGraph> ok = {path_graph(5)};
  cfg.lr = -1.0;
  EXPECT_THROW(train_embedding(net, ok, cfg), std::invalid_argument);
  cfg.lr = 1e-3;
  cfg.batch_size = 0;
  EXPECT_THROW(train_embedding(net, ok, cfg), std::invalid_argument);
}

TEST(TrainPartitioner, FrozenEmbeddingAndInitialLoss) {
  const auto enet = EmbeddingNet::initialized(4);
  const auto frozen = enet.params;
  auto pnet = PartitionNet::initialized(5);
  std::vector<CsrGraph> data;
  for (std::uint64_t s = 0; s < 5; ++s) data.push_back(testing::random_connected_graph(40, s));
  TrainConfig cfg;
  cfg.epochs = 5;
  const auto hist = train_partitioner(pnet, enet, data, cfg);
  EXPECT_EQ(enet.params, frozen);
  EXPECT_NEAR(hist.epochs.front().mean_loss, 1.0, 0.1);
  EXPECT_NE(pnet.params, PartitionNet::initialized(5).params);
}

TEST(TrainPartitioner, LearnsGridBisection) {
  // The embedding is replaced by a fixed ramp along the rows so the test
  // isolates the partitioner.
  auto pnet = PartitionNet::initialized(6);
  const auto g = grid_graph(12, 12);
  TrainConfig cfg;
  cfg.epochs = 150;
  cfg.lr = 5e-3;
  std::vector<double> ramp(144);
  for (NodeId i = 0; i < 144; ++i) ramp[i] = (i / 12 - 5.5) / 3.5;
  AdamState adam(pnet.params);
  double last = 0.0;
  for (int e = 0; e < cfg.epochs; ++e) {
    const auto h = build_hierarchy(g, static_cast<std::uint64_t>(e));
    const auto lg = partition_loss_and_grad(pnet, h, Matrix::column(ramp), {1e-12});
    adam_step(adam, pnet.params, lg.grads, cfg.lr);
    last = lg.loss;
  }
  EXPECT_LT(last, 0.3);
}

TEST(History, CsvLayout) {
  TrainHistory h;
  h.epochs.push_back({0, 1.5, 5, 0, 0, 1});
  const auto path = std::filesystem::temp_directory_path() / "gapart_history.csv";
  write_history_csv(h, path);
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "epoch,mean_loss,graphs,skipped_graphs,skipped_batches,steps");
  EXPECT_EQ(row, "0,1.5,5,0,0,1");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace gapart
