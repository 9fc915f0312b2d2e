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
#include <iosfwd>
#include <string>
#include <vector>

#include "gapart/graph.hpp"
#include "gapart/labels.hpp"

namespace gapart {

/// Labels plus the quality numbers reported for them.
struct PartitionResult {
  PartitionLabels labels;
  EdgeId cut = 0;
  double ncut = 0.0;
  double rcut = 0.0;
  double balance = 1.0;
  double runtime_s = 0.0;
};

enum class BalanceKind { kCardinality, kVolume };

/// Undirected edges whose endpoints carry different labels.
EdgeId cut(const CsrGraph& g, const PartitionLabels& labels);

/// Sum of pattern degrees over part k.
EdgeId volume(const CsrGraph& g, const PartitionLabels& labels, std::int32_t k);

/// sum_k cut(S_k, complement) / vol(S_k). Throws std::domain_error when a
/// part has zero volume.
double ncut(const CsrGraph& g, const PartitionLabels& labels);

/// sum_k cut(S_k, complement) / |S_k|. Throws std::domain_error on an empty part.
double rcut(const CsrGraph& g, const PartitionLabels& labels);

/// g * max_k |S_k| / |V| (cardinality) or g * max_k vol(S_k) / vol(V) (volume).
double balance(const CsrGraph& g, const PartitionLabels& labels, BalanceKind kind = BalanceKind::kCardinality);

/// Fills every metric of a result for `labels`; runtime is left at zero.
PartitionResult evaluate_partition(const CsrGraph& g, PartitionLabels labels,
                                   BalanceKind kind = BalanceKind::kCardinality);

/// Exhaustive minimum-Ncut bipartition. Node 0 is pinned to part 0, so each
/// bipartition is visited once. Requires 2 <= n <= 16.
struct BruteForceResult {
  PartitionLabels labels;
  double ncut = 0.0;
};
BruteForceResult brute_force_min_ncut(const CsrGraph& g);

/// Performance profile over a methods x instances table of positive values
/// (smaller is better). fraction[m][r] is the share of instances where method
/// m is within ratio_grid[r] of the best method on that instance.
struct PerformanceProfile {
  std::vector<std::string> methods;
  std::vector<double> ratio_grid;
  std::vector<std::vector<double>> fraction;
};

/// `values[m][i]` is method m on instance i. Throws std::invalid_argument on
/// ragged tables or non-positive entries.
PerformanceProfile performance_profile(const std::vector<std::string>& methods,
                                       const std::vector<std::vector<double>>& values,
                                       const std::vector<double>& ratio_grid);

/// Per-method ratios to the per-instance best; useful for picking a grid.
std::vector<std::vector<double>> performance_ratios(const std::vector<std::vector<double>>& values);

/// Grid of `points` values from 1 to the largest observed ratio.
std::vector<double> default_ratio_grid(const std::vector<std::vector<double>>& values, int points = 101);

void write_profile_csv(const PerformanceProfile& profile, std::ostream& out);
/// Step-function line plot, self-contained SVG.
void write_profile_svg(const PerformanceProfile& profile, std::ostream& out);

}  // namespace gapart
