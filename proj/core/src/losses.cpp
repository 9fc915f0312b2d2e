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

#include "gapart/losses.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapart {

Tensor apply_normalized_laplacian(const CsrGraph& g, const Tensor& f) {
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (g.degree(i) == 0) {
      throw std::domain_error("normalized laplacian: node " + std::to_string(i) + " is isolated");
    }
  }
  return sub(f, spmm_pattern(g, f));
}

Tensor rayleigh_quotients(const CsrGraph& g, const Tensor& f) {
  return col_sum(hadamard(f, apply_normalized_laplacian(g, f)));
}

Tensor eigen_residual_loss(const CsrGraph& g, const Tensor& f) {
  const Tensor lf = apply_normalized_laplacian(g, f);
  const Tensor lambda = col_sum(hadamard(f, lf));
  const Tensor residual = sub(lf, mul_row_vector(f, lambda));
  return add(frobenius_norm(residual), sum(lambda));
}

Tensor expected_ncut_loss(const CsrGraph& g, const Tensor& y, const NcutLossOptions& options) {
  const NodeId n = g.num_nodes();
  if (static_cast<NodeId>(y.rows()) != n) {
    throw std::invalid_argument("expected_ncut_loss: Y has " + std::to_string(y.rows()) + " rows for " +
                                std::to_string(n) + " nodes");
  }
  const std::size_t parts = y.cols();
  if (parts == 0) throw std::invalid_argument("expected_ncut_loss: Y has no columns");
  const Matrix& yv = y.value();

  // nbr(i,k) = sum_{j in N(i)} Y_jk, the only edge-wise quantity needed by
  // both the forward value and the gradient.
  auto nbr = std::make_shared<Matrix>(y.rows(), parts);
  std::vector<double> crossing(parts, 0.0), gamma(parts, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    auto acc = nbr->row(static_cast<std::size_t>(i));
    for (NodeId j : g.neighbors(i)) {
      const auto yj = yv.row(static_cast<std::size_t>(j));
      for (std::size_t k = 0; k < parts; ++k) acc[k] += yj[k];
    }
    const double d = g.degree(i);
    const auto yi = yv.row(static_cast<std::size_t>(i));
    for (std::size_t k = 0; k < parts; ++k) {
      crossing[k] += yi[k] * (d - acc[k]);
      gamma[k] += d * yi[k];
    }
  }

  std::vector<double> gamma_eff(parts);
  std::vector<char> clamped(parts, 0);
  auto out = std::make_shared<Matrix>(1, 1);
  for (std::size_t k = 0; k < parts; ++k) {
    if (options.gamma_floor > 0 && gamma[k] < options.gamma_floor) {
      gamma_eff[k] = options.gamma_floor;
      clamped[k] = 1;
    } else if (!(gamma[k] > 0)) {
      throw std::domain_error("expected_ncut_loss: part " + std::to_string(k) + " has zero expected volume");
    } else {
      gamma_eff[k] = gamma[k];
    }
    (*out)(0, 0) += crossing[k] / gamma_eff[k];
  }
  if (!y.tracked()) return Tensor(std::shared_ptr<const Matrix>(std::move(out)));

  const CsrGraph* gp = &g;
  return y.tape()->record(out, [y, gp, nbr, crossing, gamma_eff, clamped](const Matrix& gout, Tape& t) {
    Matrix& gy = t.grad_slot(y);
    const std::size_t parts = gamma_eff.size();
    for (NodeId m = 0; m < gp->num_nodes(); ++m) {
      const double d = gp->degree(m);
      const auto nm = nbr->row(static_cast<std::size_t>(m));
      auto dst = gy.row(static_cast<std::size_t>(m));
      for (std::size_t k = 0; k < parts; ++k) {
        double grad = (d - 2.0 * nm[k]) / gamma_eff[k];
        if (!clamped[k]) grad -= crossing[k] * d / (gamma_eff[k] * gamma_eff[k]);
        dst[k] += gout(0, 0) * grad;
      }
    }
  });
}

Tensor cardinality_penalty(const Tensor& y) {
  if (y.cols() == 0) throw std::invalid_argument("cardinality_penalty: Y has no columns");
  const double target = static_cast<double>(y.rows()) / static_cast<double>(y.cols());
  const Tensor dev = add_scalar(col_sum(y), -target);
  return sum(hadamard(dev, dev));
}

Tensor balanced_ncut_loss(const CsrGraph& g, const Tensor& y, const NcutLossOptions& options) {
  return add(expected_ncut_loss(g, y, options), cardinality_penalty(y));
}

Matrix one_hot(const PartitionLabels& labels) {
  labels.validate();
  Matrix m(labels.size(), static_cast<std::size_t>(labels.num_parts));
  for (std::size_t i = 0; i < labels.size(); ++i) m(i, static_cast<std::size_t>(labels.labels[i])) = 1.0;
  return m;
}

}  // namespace gapart
