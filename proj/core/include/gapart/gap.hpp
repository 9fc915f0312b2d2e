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
#include <vector>

#include "gapart/coarsen.hpp"
#include "gapart/gnn.hpp"
#include "gapart/metrics.hpp"

namespace gapart {

struct InferenceOptions {
  /// Independent evaluations (fresh coarsening each); the lowest Ncut wins.
  std::int32_t evaluations = 2;
  CoarsenOptions coarsen;
};

/// One evaluation's outcome, kept for reporting.
struct EvaluationRecord {
  std::uint64_t seed = 0;
  double ncut = 0.0;
  /// True when the hard labelling fell back to a sweep (see gap_partition).
  bool fallback = false;
};

struct InferenceResult {
  PartitionResult best;
  std::vector<EvaluationRecord> evaluations;
};

/// Approximate spectral partitioning: embedding, second column, sweep cut.
/// Evaluation e uses the coarsening seed derive_seed(seed, e).
InferenceResult approx_spectral_partition(const EmbeddingNet& enet, const CsrGraph& g, std::uint64_t seed,
                                          const InferenceOptions& options = {});

/// Full pipeline: embedding, standardised Fiedler column, partition net,
/// arg-max rounding of the probabilities. If rounding leaves a part empty
/// the partition is recovered by a sweep over the probabilities of part 0.
/// Evaluations share the hierarchy between both networks.
InferenceResult gap_partition(const EmbeddingNet& enet, const PartitionNet& pnet, const CsrGraph& g,
                              std::uint64_t seed, const InferenceOptions& options = {});

/// Arg-max labels of an n x g probability matrix; ties go to the lower part.
PartitionLabels hard_round(const Matrix& probabilities);

}  // namespace gapart
