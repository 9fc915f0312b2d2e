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
#include <string>

#include "gapart/gnn.hpp"

namespace gapart {

// Binary checkpoint layout (all integers little-endian):
//   8 bytes  magic "GAPCKPT\0"
//   u32      format version (1)
//   u64      header length H
//   H bytes  JSON header {"kind", "plan", "arrays": [{"name", "shape"}...]}
//   float64  array data in header order, little-endian, row-major
// There are no timestamps, so equal networks give byte-identical files.

inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const EmbeddingNet& net, std::ostream& out);
void save_checkpoint(const PartitionNet& net, std::ostream& out);
void save_checkpoint(const EmbeddingNet& net, const std::filesystem::path& path);
void save_checkpoint(const PartitionNet& net, const std::filesystem::path& path);

/// Loads an embedding checkpoint. Throws FormatError on a bad file, a wrong
/// kind, or arrays that do not match the stored plan; throws
/// std::invalid_argument if `expected` is given and differs from the stored plan.
EmbeddingNet load_embedding(std::istream& in, const EmbeddingPlan* expected = nullptr);
EmbeddingNet load_embedding(const std::filesystem::path& path, const EmbeddingPlan* expected = nullptr);

PartitionNet load_partitioner(std::istream& in, const PartitionPlan* expected = nullptr);
PartitionNet load_partitioner(const std::filesystem::path& path, const PartitionPlan* expected = nullptr);

}  // namespace gapart
