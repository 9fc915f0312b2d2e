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
#include <map>
#include <string>
#include <vector>

#include "gapart/graph.hpp"

namespace gapart {

/// One graph of a dataset: either a file (`path`, relative to the manifest)
/// or a generator recipe (`family`, `params`, `seed`).
///
/// Families and their parameters:
///   grid      rows, cols
///   delaunay  points, width (1), height (1)
///   graded_l  k        (2k x 2k lattice minus a corner quadrant)
///   hole3     unit
///   hole6     unit
struct GraphSpec {
  std::string path;
  std::string family;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

/// Runs the generator named by spec.family. Throws std::invalid_argument on
/// unknown families or missing parameters.
CsrGraph make_graph(const GraphSpec& spec);

/// Reads spec.path (resolved against base_dir, largest component only) when
/// set, otherwise generates the graph.
CsrGraph load_graph(const GraphSpec& spec, const std::filesystem::path& base_dir);

struct SampleOptions {
  std::vector<std::string> families = {"grid", "delaunay", "graded_l", "hole3", "hole6"};
  std::int32_t count = 100;
  NodeId min_nodes = 100;
  NodeId max_nodes = 1000;
  std::uint64_t seed = 0;
};

/// Recipes cycling through the families, each aiming at a node count drawn
/// uniformly from [min_nodes, max_nodes]. Lattice families snap to the
/// nearest size their shape allows.
std::vector<GraphSpec> sample_specs(const SampleOptions& options);

/// JSON manifest {"graphs": [{"path", "family", "params", "seed"}, ...]}.
/// A bare top-level array of entries is accepted on read.
std::vector<GraphSpec> read_manifest(const std::filesystem::path& path);
void write_manifest(const std::vector<GraphSpec>& specs, const std::filesystem::path& path);

/// Loads every entry of a manifest in order.
std::vector<CsrGraph> load_dataset(const std::filesystem::path& manifest);

/// Short human-readable id, e.g. "grid_r12_c20" or the file stem.
std::string spec_name(const GraphSpec& spec);

}  // namespace gapart
