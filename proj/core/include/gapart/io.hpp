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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "gapart/graph.hpp"
#include "gapart/labels.hpp"

namespace gapart {

/// Thrown for malformed or inconsistent input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix Market coordinate files. The sparsity pattern becomes the adjacency:
// values are discarded, the diagonal is dropped and the pattern is symmetrized.
// Rectangular r x c matrices give max(r, c) nodes.
CsrGraph read_matrix_market(const std::filesystem::path& path);
CsrGraph parse_matrix_market(std::istream& in);

// METIS ASCII graph format. Vertex and edge weights in the input (fmt 1, 10,
// 11) are skipped; the writer always emits the unweighted variant.
CsrGraph read_metis_graph(const std::filesystem::path& path);
CsrGraph parse_metis_graph(std::istream& in);
void write_metis_graph(const CsrGraph& g, const std::filesystem::path& path);
void write_metis_graph(const CsrGraph& g, std::ostream& out);

/// Dispatches on extension: `.mtx` is Matrix Market, anything else METIS.
CsrGraph read_graph(const std::filesystem::path& path);

/// Reads a graph and keeps its largest connected component, the
/// preprocessing applied before any partitioner runs.
ComponentExtraction read_graph_for_partitioning(const std::filesystem::path& path);

// Partition files: one label per line, line i holds the label of node i.
void write_partition(const PartitionLabels& labels, const std::filesystem::path& path);
void write_partition(const PartitionLabels& labels, std::ostream& out);
/// Throws FormatError on a label >= num_parts, on a negative or non-integer
/// label, and when `expected_nodes` is given and the line count differs.
PartitionLabels read_partition(const std::filesystem::path& path, std::int32_t num_parts,
                               std::optional<NodeId> expected_nodes = std::nullopt);
PartitionLabels parse_partition(std::istream& in, std::int32_t num_parts,
                                std::optional<NodeId> expected_nodes = std::nullopt);

}  // namespace gapart
