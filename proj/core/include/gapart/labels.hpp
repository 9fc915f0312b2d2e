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
#include <stdexcept>
#include <vector>

namespace gapart {

/// One part index in [0, num_parts) per node. Empty parts are allowed;
/// `empty_parts()` reports them.
struct PartitionLabels {
  std::vector<std::int32_t> labels;
  std::int32_t num_parts = 2;

  std::size_t size() const { return labels.size(); }

  std::vector<std::int64_t> part_sizes() const {
    std::vector<std::int64_t> s(static_cast<std::size_t>(num_parts), 0);
    for (auto l : labels) ++s[static_cast<std::size_t>(l)];
    return s;
  }

  std::int32_t empty_parts() const {
    std::int32_t e = 0;
    for (auto s : part_sizes()) e += (s == 0);
    return e;
  }

  /// Throws std::invalid_argument if a label falls outside [0, num_parts).
  void validate() const {
    if (num_parts < 1) throw std::invalid_argument("PartitionLabels: num_parts must be >= 1");
    for (auto l : labels) {
      if (l < 0 || l >= num_parts) throw std::invalid_argument("PartitionLabels: label out of range");
    }
  }

  friend bool operator==(const PartitionLabels&, const PartitionLabels&) = default;
};

}  // namespace gapart
