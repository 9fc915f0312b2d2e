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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gapart/graph.hpp"
#include "gapart/io.hpp"
#include "test_util.hpp"

namespace gapart {
namespace {

using Edges = std::vector<std::pair<NodeId, NodeId>>;

CsrGraph build(const Edges& e, NodeId n) { return from_edge_list(std::span<const std::pair<NodeId, NodeId>>(e), n); }

TEST(FromEdgeList, Path) {
  const auto g = build({{0, 1}, {1, 2}}, 3);
  EXPECT_EQ(g.num_nodes(), 3);
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(g, path_graph(3));
}

TEST(FromEdgeList, DuplicatesAndSelfLoops) {
  const auto g = build({{0, 1}, {1, 0}, {0, 0}}, 2);
  EXPECT_EQ(g.num_edges(), 1);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(0, 0));
  // An explicit reverse entry is not a duplicate.
  EXPECT_EQ(g.neighbor_weights(0)[0], 1.0);
  const auto twice = build({{0, 1}, {0, 1}}, 2);
  EXPECT_EQ(twice.neighbor_weights(0)[0], 2.0);
}

TEST(FromEdgeList, Triangle) {
  const auto g = build({{0, 1}, {1, 2}, {2, 0}}, 3);
  for (NodeId i = 0; i < 3; ++i) EXPECT_EQ(g.degree(i), 2);
  EXPECT_EQ(g, complete_graph(3));
}

TEST(FromEdgeList, RejectsBadInput) {
  EXPECT_THROW(build({}, 0), std::invalid_argument);
  EXPECT_THROW(build({{0, 3}}, 3), std::invalid_argument);
  const std::vector<WeightedEdge> neg = {{0, 1, -1.0}};
  EXPECT_THROW(from_edge_list(neg, 2), std::invalid_argument);
}

TEST(CsrGraph, ConstructorValidates) {
  EXPECT_THROW(CsrGraph({0, 1, 1}, {1}, {1.0}), std::invalid_argument);        // missing reverse
  EXPECT_THROW(CsrGraph({0, 1, 2}, {0, 0}, {1.0, 1.0}), std::invalid_argument);  // self-loop
  EXPECT_NO_THROW(CsrGraph({0, 1, 2}, {1, 0}, {1.0, 1.0}));
}

TEST(Degrees, WeightedAndPattern) {
  EXPECT_EQ(degrees(path_graph(3)), (std::vector<double>{1, 2, 1}));
  EXPECT_EQ(degrees(complete_graph(3)), (std::vector<double>{2, 2, 2}));
  const std::vector<WeightedEdge> e = {{0, 1, 3.0}};
  const auto p2 = from_edge_list(e, 2);
  EXPECT_EQ(degrees(p2), (std::vector<double>{3, 3}));
  EXPECT_EQ(pattern_degrees(p2), (std::vector<double>{1, 1}));
}

TEST(EdgesOf, RoundTrip) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = testing::random_connected_graph(20, s);
    EXPECT_EQ(from_edge_list(edges_of(g), g.num_nodes()), g);
  }
}

TEST(LargestComponent, DropsIsolatedNode) {
  const auto g = build({{0, 1}, {1, 2}}, 4);
  const auto lcc = largest_connected_component(g);
  EXPECT_EQ(lcc.graph, path_graph(3));
  EXPECT_EQ(lcc.old_to_new, (std::vector<NodeId>{0, 1, 2, -1}));
}

TEST(LargestComponent, PicksLargestByNodes) {
  // Triangles {0,1,2} and {3,4,5}, P4 on {6,7,8,9}.
  const auto g = build({{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {6, 7}, {7, 8}, {8, 9}}, 10);
  const auto lcc = largest_connected_component(g);
  EXPECT_EQ(lcc.graph, path_graph(4));
  EXPECT_EQ(lcc.new_to_old, (std::vector<NodeId>{6, 7, 8, 9}));
}

TEST(LargestComponent, ConnectedGraphUnchanged) {
  const auto g = grid_graph(4, 4);
  const auto lcc = largest_connected_component(g);
  EXPECT_EQ(lcc.graph, g);
  for (NodeId i = 0; i < 16; ++i) EXPECT_EQ(lcc.old_to_new[i], i);
}

TEST(Components, CountAndConnectivity) {
  NodeId count = 0;
  connected_components(build({{0, 1}, {2, 3}}, 5), &count);
  EXPECT_EQ(count, 3);
  EXPECT_TRUE(is_connected(grid_graph(3, 5)));
  EXPECT_FALSE(is_connected(build({{0, 1}}, 3)));
}

TEST(PermuteNodes, PreservesStructure) {
  const auto g = path_graph(4);
  const std::vector<NodeId> perm = {3, 2, 1, 0};
  EXPECT_EQ(permute_nodes(g, perm), g);
  const std::vector<NodeId> rot = {1, 2, 3, 0};
  const auto h = permute_nodes(g, rot);
  EXPECT_TRUE(h.has_edge(1, 2));
  EXPECT_TRUE(h.has_edge(3, 0));
  EXPECT_FALSE(h.has_edge(0, 1));
}

TEST(NamedGraphs, Shapes) {
  EXPECT_EQ(cycle_graph(6).num_edges(), 6);
  EXPECT_EQ(complete_graph(5).num_edges(), 10);
  const auto g = grid_graph(3, 4);
  EXPECT_EQ(g.num_edges(), 3 * 3 + 2 * 4);
  EXPECT_TRUE(g.has_edge(0, 4));
  EXPECT_TRUE(g.has_edge(0, 1));
}

TEST(MatrixMarket, GeneralPattern) {
  std::istringstream in("%%MatrixMarket matrix coordinate real general\n% comment\n3 3 2\n1 2 1.5\n2 3 -4\n");
  EXPECT_EQ(parse_matrix_market(in), path_graph(3));
}

TEST(MatrixMarket, SymmetricLowerTriangle) {
  std::istringstream in("%%MatrixMarket matrix coordinate pattern symmetric\n4 4 3\n2 1\n3 2\n4 3\n");
  EXPECT_EQ(parse_matrix_market(in), path_graph(4));
}

TEST(MatrixMarket, DiagonalIgnored) {
  std::istringstream in("%%MatrixMarket matrix coordinate integer general\n3 3 3\n1 2 1\n2 2 5\n2 3 1\n");
  EXPECT_EQ(parse_matrix_market(in), path_graph(3));
}

TEST(MatrixMarket, Malformed) {
  std::istringstream no_banner("3 3 1\n1 2\n");
  EXPECT_THROW(parse_matrix_market(no_banner), FormatError);
  std::istringstream out_of_range("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 3\n");
  EXPECT_THROW(parse_matrix_market(out_of_range), FormatError);
  std::istringstream truncated("%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n");
  EXPECT_THROW(parse_matrix_market(truncated), FormatError);
}

TEST(Metis, ParseP2) {
  std::istringstream in("2 1\n2\n1\n");
  EXPECT_EQ(parse_metis_graph(in), path_graph(2));
}

TEST(Metis, WriteP3) {
  std::ostringstream out;
  write_metis_graph(path_graph(3), out);
  EXPECT_EQ(out.str(), "3 2\n2\n1 3\n2\n");
}

TEST(Metis, RoundTripGrid) {
  const auto g = grid_graph(8, 8);
  std::stringstream buf;
  write_metis_graph(g, buf);
  const auto back = parse_metis_graph(buf);
  EXPECT_EQ(back.row_ptr().size(), g.row_ptr().size());
  EXPECT_EQ(back, g);
}

TEST(Metis, WeightedFormatsSkipWeights) {
  std::istringstream in("% c\n3 2 11 1\n7 2 5\n1 1 5 3 9\n4 2 9\n");
  EXPECT_EQ(parse_metis_graph(in), path_graph(3));
}

TEST(Metis, Malformed) {
  std::istringstream edge_count("3 5\n2\n1 3\n2\n");
  EXPECT_THROW(parse_metis_graph(edge_count), FormatError);
  std::istringstream bad_index("2 1\n3\n1\n");
  EXPECT_THROW(parse_metis_graph(bad_index), FormatError);
}

TEST(PartitionFile, WriteAndRead) {
  PartitionLabels labels;
  labels.labels = {0, 0, 1, 1};
  std::ostringstream out;
  write_partition(labels, out);
  EXPECT_EQ(out.str(), "0\n0\n1\n1\n");
  std::istringstream in(out.str());
  EXPECT_EQ(parse_partition(in, 2), labels);
}

TEST(PartitionFile, RangeAndLengthChecks) {
  std::istringstream out_of_range("0\n2\n");
  EXPECT_THROW(parse_partition(out_of_range, 2), FormatError);
  std::istringstream negative("0\n-1\n");
  EXPECT_THROW(parse_partition(negative, 2), FormatError);
  std::istringstream short_file("0\n1\n");
  EXPECT_THROW(parse_partition(short_file, 2, NodeId{3}), FormatError);
}

TEST(GraphFiles, DispatchOnExtension) {
  const auto dir = std::filesystem::temp_directory_path() / "gapart_graph_test";
  std::filesystem::create_directories(dir);
  const auto g = grid_graph(3, 3);
  write_metis_graph(g, dir / "g.graph");
  EXPECT_EQ(read_graph(dir / "g.graph"), g);
  {
    std::ofstream mm(dir / "g.mtx");
    mm << "%%MatrixMarket matrix coordinate pattern general\n5 5 2\n1 2\n2 3\n";
  }
  const auto ext = read_graph_for_partitioning(dir / "g.mtx");
  EXPECT_EQ(ext.graph, path_graph(3));
  EXPECT_THROW(read_graph(dir / "missing.graph"), FormatError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace gapart
