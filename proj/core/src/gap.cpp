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

#include "gapart/gap.hpp"

#include <stdexcept>

#include "gapart/random.hpp"
#include "gapart/spectral.hpp"

namespace gapart {
namespace {

template <typename Eval>
InferenceResult best_of(std::uint64_t seed, const InferenceOptions& options, Eval&& eval) {
  if (options.evaluations < 1) throw std::invalid_argument("inference: evaluations must be >= 1");
  InferenceResult out;
  bool have = false;
  for (std::int32_t e = 0; e < options.evaluations; ++e) {
    EvaluationRecord rec;
    rec.seed = derive_seed(seed, static_cast<std::uint64_t>(e));
    PartitionResult r = eval(rec);
    rec.ncut = r.ncut;
    out.evaluations.push_back(rec);
    if (!have || r.ncut < out.best.ncut) {
      out.best = std::move(r);
      have = true;
    }
  }
  return out;
}

}  // namespace

PartitionLabels hard_round(const Matrix& probabilities) {
  if (probabilities.cols() == 0) throw std::invalid_argument("hard_round: no parts");
  PartitionLabels labels;
  labels.num_parts = static_cast<std::int32_t>(probabilities.cols());
  labels.labels.resize(probabilities.rows());
  for (std::size_t i = 0; i < probabilities.rows(); ++i) {
    const auto row = probabilities.row(i);
    std::size_t best = 0;
    for (std::size_t k = 1; k < row.size(); ++k) {
      if (row[k] > row[best]) best = k;
    }
    labels.labels[i] = static_cast<std::int32_t>(best);
  }
  return labels;
}

InferenceResult approx_spectral_partition(const EmbeddingNet& enet, const CsrGraph& g, std::uint64_t seed,
                                          const InferenceOptions& options) {
  return best_of(seed, options, [&](EvaluationRecord& rec) {
    const Hierarchy h = build_hierarchy(g, rec.seed, options.coarsen);
    const Tensor emb = embedding_forward(enet, h);
    return sweep_cut(g, emb.value().column_values(1));
  });
}

InferenceResult gap_partition(const EmbeddingNet& enet, const PartitionNet& pnet, const CsrGraph& g,
                              std::uint64_t seed, const InferenceOptions& options) {
  return best_of(seed, options, [&](EvaluationRecord& rec) {
    const Hierarchy h = build_hierarchy(g, rec.seed, options.coarsen);
    const Tensor emb = embedding_forward(enet, h);
    const auto fiedler = standardize_fiedler(emb.value());
    const Tensor y = partition_forward(pnet, h, Tensor(Matrix::column(fiedler)));
    PartitionLabels labels = hard_round(y.value());
    if (labels.empty_parts() == 0) return evaluate_partition(g, std::move(labels));
    if (labels.num_parts != 2) throw std::runtime_error("gap_partition: rounding left a part empty");
    rec.fallback = true;
    try {
      return sweep_cut(g, y.value().column_values(0));
    } catch (const std::domain_error&) {
      // Saturated probabilities: fall back to the embedding itself.
      return sweep_cut(g, fiedler);
    }
  });
}

}  // namespace gapart
