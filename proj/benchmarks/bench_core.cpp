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

// Microbenchmarks for the hot paths: eigensolver, sweep, matching,
// triangulation and one training step of each network.

#include <benchmark/benchmark.h>

#include "gapart/coarsen.hpp"
#include "gapart/gnn.hpp"
#include "gapart/graph.hpp"
#include "gapart/mesh.hpp"
#include "gapart/spectral.hpp"
#include "gapart/train.hpp"

namespace {

using namespace gapart;

CsrGraph square_grid(benchmark::State& state) {
  const auto side = static_cast<NodeId>(state.range(0));
  return grid_graph(side, side);
}

void BM_FiedlerGrid(benchmark::State& state) {
  const CsrGraph g = square_grid(state);
  for (auto _ : state) benchmark::DoNotOptimize(fiedler_exact(g));
  state.counters["nodes"] = g.num_nodes();
}
BENCHMARK(BM_FiedlerGrid)->Arg(32)->Arg(64)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SweepCut(benchmark::State& state) {
  const CsrGraph g = square_grid(state);
  const auto f = fiedler_exact(g).vector;
  for (auto _ : state) benchmark::DoNotOptimize(sweep_cut(g, f));
  state.counters["nodes"] = g.num_nodes();
}
BENCHMARK(BM_SweepCut)->Arg(64)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_HeavyEdgeMatching(benchmark::State& state) {
  const CsrGraph g = delaunay_square(static_cast<NodeId>(state.range(0)), 1.0, 1.0, 11);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(heavy_edge_matching(g, seed++));
}
BENCHMARK(BM_HeavyEdgeMatching)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_BuildHierarchy(benchmark::State& state) {
  const CsrGraph g = delaunay_square(static_cast<NodeId>(state.range(0)), 1.0, 1.0, 11);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_hierarchy(g, seed++));
}
BENCHMARK(BM_BuildHierarchy)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_Delaunay(benchmark::State& state) {
  const auto n = static_cast<NodeId>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(delaunay_square(n, 1.0, 1.0, seed++));
}
BENCHMARK(BM_Delaunay)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EmbeddingStep(benchmark::State& state) {
  const CsrGraph g = delaunay_square(static_cast<NodeId>(state.range(0)), 1.0, 1.0, 5);
  const Hierarchy h = build_hierarchy(g, 1);
  const EmbeddingNet net = EmbeddingNet::initialized(1);
  for (auto _ : state) benchmark::DoNotOptimize(embedding_loss_and_grad(net, h));
}
BENCHMARK(BM_EmbeddingStep)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_PartitionStep(benchmark::State& state) {
  const CsrGraph g = delaunay_square(static_cast<NodeId>(state.range(0)), 1.0, 1.0, 5);
  const Hierarchy h = build_hierarchy(g, 1);
  const EmbeddingNet enet = EmbeddingNet::initialized(1);
  const PartitionNet pnet = PartitionNet::initialized(2);
  const Matrix features = Matrix::column(standardize_fiedler(embedding_forward(enet, h).value()));
  for (auto _ : state) benchmark::DoNotOptimize(partition_loss_and_grad(pnet, h, features));
}
BENCHMARK(BM_PartitionStep)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
