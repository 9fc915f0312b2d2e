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

#include "gapart/tensor.hpp"

#include <cmath>
#include <string>

namespace gapart {

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("Matrix: data length != rows * cols");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

std::vector<double> Matrix::column_values(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (!same_shape(o)) throw std::invalid_argument("Matrix::operator+=: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

double Tensor::item() const {
  if (rows() != 1 || cols() != 1) throw std::invalid_argument("Tensor::item: not a 1x1 tensor");
  return (*value_)(0, 0);
}

// ---------------------------------------------------------------------------
// Tape

Tensor Tape::leaf(Matrix value) { return record(std::make_shared<const Matrix>(std::move(value)), nullptr); }

Tensor Tape::record(std::shared_ptr<const Matrix> value, BackwardFn backward) {
  Tensor t(std::move(value));
  t.tape_ = this;
  t.id_ = nodes_.size();
  nodes_.push_back(Node{t.rows(), t.cols(), std::move(backward), Matrix(), false});
  return t;
}

Matrix& Tape::grad_slot(const Tensor& t) {
  auto& node = nodes_[t.id_];
  if (!node.has_grad) {
    node.grad = Matrix(node.rows, node.cols);
    node.has_grad = true;
  }
  return node.grad;
}

void Tape::accumulate(const Tensor& t, const Matrix& g) {
  if (t.tape_ != this) return;
  grad_slot(t) += g;
}

void Tape::backward(const Tensor& loss) {
  if (loss.tape_ != this) throw std::invalid_argument("Tape::backward: loss is not recorded on this tape");
  if (loss.rows() != 1 || loss.cols() != 1) throw std::invalid_argument("Tape::backward: loss must be 1x1");
  for (auto& node : nodes_) {
    node.has_grad = false;
    node.grad = Matrix();
  }
  grad_slot(loss)(0, 0) = 1.0;
  for (std::size_t i = loss.id_ + 1; i-- > 0;) {
    auto& node = nodes_[i];
    if (node.has_grad && node.backward) node.backward(node.grad, *this);
  }
}

Matrix Tape::grad(const Tensor& t) const {
  if (t.tape_ != this) throw std::invalid_argument("Tape::grad: tensor is not recorded on this tape");
  const auto& node = nodes_[t.id_];
  return node.has_grad ? node.grad : Matrix(node.rows, node.cols);
}

// ---------------------------------------------------------------------------
// Ops

namespace {

using Shared = std::shared_ptr<Matrix>;

Tape* common_tape(std::initializer_list<const Tensor*> inputs) {
  Tape* tape = nullptr;
  for (const Tensor* t : inputs) {
    if (!t->defined()) throw std::invalid_argument("op on undefined tensor");
    if (!t->tracked()) continue;
    if (tape && tape != t->tape()) throw std::invalid_argument("op mixes tensors from different tapes");
    tape = t->tape();
  }
  return tape;
}

void check_finite(const Matrix& m, const char* op) {
  for (double v : m.values()) {
    if (!std::isfinite(v)) throw NonFiniteError(std::string("non-finite value produced by ") + op);
  }
}

Tensor finish(Shared value, const char* op, Tape* tape, Tape::BackwardFn fn) {
  check_finite(*value, op);
  if (!tape) return Tensor(std::shared_ptr<const Matrix>(std::move(value)));
  return tape->record(std::move(value), std::move(fn));
}

std::string shape(const Tensor& t) { return std::to_string(t.rows()) + "x" + std::to_string(t.cols()); }

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch " + shape(a) + " vs " + shape(b));
  }
}

void require_scalar(const Tensor& s, const char* op) {
  if (s.rows() != 1 || s.cols() != 1) throw std::invalid_argument(std::string(op) + ": expected a 1x1 tensor");
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: shape mismatch " + shape(a) + " * " + shape(b));
  }
  Tape* tape = common_tape({&a, &b});
  auto out = std::make_shared<Matrix>(a.rows(), b.cols());
  out->eigen().noalias() = a.value().eigen() * b.value().eigen();
  return finish(out, "matmul", tape, [a, b](const Matrix& g, Tape& t) {
    if (a.tape() == &t) t.grad_slot(a).eigen().noalias() += g.eigen() * b.value().eigen().transpose();
    if (b.tape() == &t) t.grad_slot(b).eigen().noalias() += a.value().eigen().transpose() * g.eigen();
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  Tape* tape = common_tape({&a, &b});
  auto out = std::make_shared<Matrix>(a.value());
  out->eigen() += b.value().eigen();
  return finish(out, "add", tape, [a, b](const Matrix& g, Tape& t) {
    t.accumulate(a, g);
    t.accumulate(b, g);
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  Tape* tape = common_tape({&a, &b});
  auto out = std::make_shared<Matrix>(a.value());
  out->eigen() -= b.value().eigen();
  return finish(out, "sub", tape, [a, b](const Matrix& g, Tape& t) {
    t.accumulate(a, g);
    if (b.tape() == &t) t.grad_slot(b).eigen() -= g.eigen();
  });
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "hadamard");
  Tape* tape = common_tape({&a, &b});
  auto out = std::make_shared<Matrix>(a.value());
  out->eigen().array() *= b.value().eigen().array();
  return finish(out, "hadamard", tape, [a, b](const Matrix& g, Tape& t) {
    if (a.tape() == &t) t.grad_slot(a).eigen().array() += g.eigen().array() * b.value().eigen().array();
    if (b.tape() == &t) t.grad_slot(b).eigen().array() += g.eigen().array() * a.value().eigen().array();
  });
}

Tensor scale(const Tensor& a, double s) {
  Tape* tape = common_tape({&a});
  auto out = std::make_shared<Matrix>(a.value());
  out->eigen() *= s;
  return finish(out, "scale", tape, [a, s](const Matrix& g, Tape& t) {
    t.grad_slot(a).eigen() += s * g.eigen();
  });
}

Tensor add_scalar(const Tensor& a, double s) {
  Tape* tape = common_tape({&a});
  auto out = std::make_shared<Matrix>(a.value());
  out->eigen().array() += s;
  return finish(out, "add_scalar", tape, [a](const Matrix& g, Tape& t) { t.accumulate(a, g); });
}

Tensor add_row_vector(const Tensor& a, const Tensor& bias) {
  if (bias.rows() != 1 || bias.cols() != a.cols()) {
    throw std::invalid_argument("add_row_vector: bias " + shape(bias) + " does not match " + shape(a));
  }
  Tape* tape = common_tape({&a, &bias});
  auto out = std::make_shared<Matrix>(a.value());
  out->eigen().rowwise() += bias.value().eigen().row(0);
  return finish(out, "add_row_vector", tape, [a, bias](const Matrix& g, Tape& t) {
    t.accumulate(a, g);
    if (bias.tape() == &t) t.grad_slot(bias).eigen().row(0) += g.eigen().colwise().sum();
  });
}

Tensor mul_row_vector(const Tensor& a, const Tensor& r) {
  if (r.rows() != 1 || r.cols() != a.cols()) {
    throw std::invalid_argument("mul_row_vector: factor " + shape(r) + " does not match " + shape(a));
  }
  Tape* tape = common_tape({&a, &r});
  auto out = std::make_shared<Matrix>(a.value());
  out->eigen().array().rowwise() *= r.value().eigen().row(0).array();
  return finish(out, "mul_row_vector", tape, [a, r](const Matrix& g, Tape& t) {
    if (a.tape() == &t) t.grad_slot(a).eigen().array() += g.eigen().array().rowwise() * r.value().eigen().row(0).array();
    if (r.tape() == &t) {
      t.grad_slot(r).eigen().row(0) += (g.eigen().array() * a.value().eigen().array()).matrix().colwise().sum();
    }
  });
}

Tensor mul_scalar(const Tensor& a, const Tensor& s) {
  require_scalar(s, "mul_scalar");
  Tape* tape = common_tape({&a, &s});
  const double sv = s.item();
  auto out = std::make_shared<Matrix>(a.value());
  out->eigen() *= sv;
  return finish(out, "mul_scalar", tape, [a, s, sv](const Matrix& g, Tape& t) {
    if (a.tape() == &t) t.grad_slot(a).eigen() += sv * g.eigen();
    if (s.tape() == &t) t.grad_slot(s)(0, 0) += (g.eigen().array() * a.value().eigen().array()).sum();
  });
}

Tensor div_scalar(const Tensor& a, const Tensor& s) {
  require_scalar(s, "div_scalar");
  Tape* tape = common_tape({&a, &s});
  const double sv = s.item();
  auto out = std::make_shared<Matrix>(a.value());
  out->eigen() /= sv;
  return finish(out, "div_scalar", tape, [a, s, sv](const Matrix& g, Tape& t) {
    if (a.tape() == &t) t.grad_slot(a).eigen() += g.eigen() / sv;
    if (s.tape() == &t) {
      t.grad_slot(s)(0, 0) -= (g.eigen().array() * a.value().eigen().array()).sum() / (sv * sv);
    }
  });
}

Tensor row_sum(const Tensor& a) {
  Tape* tape = common_tape({&a});
  auto out = std::make_shared<Matrix>(a.rows(), 1);
  out->eigen() = a.value().eigen().rowwise().sum();
  return finish(out, "row_sum", tape, [a](const Matrix& g, Tape& t) {
    t.grad_slot(a).eigen().colwise() += g.eigen().col(0);
  });
}

Tensor col_sum(const Tensor& a) {
  Tape* tape = common_tape({&a});
  auto out = std::make_shared<Matrix>(1, a.cols());
  out->eigen() = a.value().eigen().colwise().sum();
  return finish(out, "col_sum", tape, [a](const Matrix& g, Tape& t) {
    t.grad_slot(a).eigen().rowwise() += g.eigen().row(0);
  });
}

Tensor col_mean(const Tensor& a) {
  if (a.rows() == 0) throw std::invalid_argument("col_mean: no rows");
  return scale(col_sum(a), 1.0 / static_cast<double>(a.rows()));
}

Tensor sum(const Tensor& a) {
  Tape* tape = common_tape({&a});
  auto out = std::make_shared<Matrix>(1, 1);
  (*out)(0, 0) = a.value().eigen().sum();
  return finish(out, "sum", tape, [a](const Matrix& g, Tape& t) {
    t.grad_slot(a).eigen().array() += g(0, 0);
  });
}

Tensor tanh(const Tensor& a) {
  Tape* tape = common_tape({&a});
  auto out = std::make_shared<Matrix>(a.rows(), a.cols());
  const auto in = a.value().values();
  auto dst = out->values();
  for (std::size_t k = 0; k < in.size(); ++k) dst[k] = std::tanh(in[k]);
  std::shared_ptr<const Matrix> y = out;
  return finish(out, "tanh", tape, [a, y](const Matrix& g, Tape& t) {
    t.grad_slot(a).eigen().array() += g.eigen().array() * (1.0 - y->eigen().array().square());
  });
}

Tensor frobenius_norm(const Tensor& a) {
  Tape* tape = common_tape({&a});
  auto out = std::make_shared<Matrix>(1, 1);
  const double nrm = a.value().eigen().norm();
  (*out)(0, 0) = nrm;
  return finish(out, "frobenius_norm", tape, [a, nrm](const Matrix& g, Tape& t) {
    if (nrm == 0.0) throw NonFiniteError("frobenius_norm: gradient undefined at zero");
    t.grad_slot(a).eigen() += (g(0, 0) / nrm) * a.value().eigen();
  });
}

Tensor column(const Tensor& a, std::size_t j) {
  if (j >= a.cols()) throw std::invalid_argument("column: index out of range");
  Tape* tape = common_tape({&a});
  auto out = std::make_shared<Matrix>(a.rows(), 1);
  out->eigen() = a.value().eigen().col(static_cast<Eigen::Index>(j));
  return finish(out, "column", tape, [a, j](const Matrix& g, Tape& t) {
    t.grad_slot(a).eigen().col(static_cast<Eigen::Index>(j)) += g.eigen().col(0);
  });
}

Tensor concat_columns(std::span<const Tensor> parts) {
  if (parts.empty()) throw std::invalid_argument("concat_columns: nothing to concatenate");
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  Tape* tape = nullptr;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw std::invalid_argument("concat_columns: row count mismatch");
    Tape* pt = common_tape({&p});
    if (pt) {
      if (tape && tape != pt) throw std::invalid_argument("concat_columns: tensors from different tapes");
      tape = pt;
    }
    cols += p.cols();
  }
  auto out = std::make_shared<Matrix>(rows, cols);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    out->eigen().middleCols(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(p.cols())) =
        p.value().eigen();
    offset += p.cols();
  }
  std::vector<Tensor> keep(parts.begin(), parts.end());
  return finish(out, "concat_columns", tape, [keep](const Matrix& g, Tape& t) {
    std::size_t off = 0;
    for (const auto& p : keep) {
      if (p.tape() == &t) {
        t.grad_slot(p).eigen() +=
            g.eigen().middleCols(static_cast<Eigen::Index>(off), static_cast<Eigen::Index>(p.cols()));
      }
      off += p.cols();
    }
  });
}

Tensor spmm_pattern(const CsrGraph& g, const Tensor& f) {
  if (static_cast<NodeId>(f.rows()) != g.num_nodes()) {
    throw std::invalid_argument("spmm_pattern: feature rows " + std::to_string(f.rows()) + " != nodes " +
                                std::to_string(g.num_nodes()));
  }
  Tape* tape = common_tape({&f});
  const std::size_t c = f.cols();
  auto out = std::make_shared<Matrix>(f.rows(), c);
  const Matrix& in = f.value();
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    const auto nb = g.neighbors(i);
    if (nb.empty()) continue;
    auto dst = out->row(static_cast<std::size_t>(i));
    for (NodeId j : nb) {
      const auto src = in.row(static_cast<std::size_t>(j));
      for (std::size_t k = 0; k < c; ++k) dst[k] += src[k];
    }
    const double inv = 1.0 / static_cast<double>(nb.size());
    for (std::size_t k = 0; k < c; ++k) dst[k] *= inv;
  }
  const CsrGraph* gp = &g;
  return finish(out, "spmm_pattern", tape, [f, gp, c](const Matrix& gout, Tape& t) {
    Matrix& gf = t.grad_slot(f);
    for (NodeId i = 0; i < gp->num_nodes(); ++i) {
      const auto nb = gp->neighbors(i);
      if (nb.empty()) continue;
      const double inv = 1.0 / static_cast<double>(nb.size());
      const auto src = gout.row(static_cast<std::size_t>(i));
      for (NodeId j : nb) {
        auto dst = gf.row(static_cast<std::size_t>(j));
        for (std::size_t k = 0; k < c; ++k) dst[k] += inv * src[k];
      }
    }
  });
}

Tensor gather_rows(const Tensor& a, std::span<const NodeId> index) {
  Tape* tape = common_tape({&a});
  const std::size_t c = a.cols();
  auto out = std::make_shared<Matrix>(index.size(), c);
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto src_row = index[i];
    if (src_row < 0 || static_cast<std::size_t>(src_row) >= a.rows()) {
      throw std::invalid_argument("gather_rows: index out of range");
    }
    const auto src = a.value().row(static_cast<std::size_t>(src_row));
    std::copy(src.begin(), src.end(), out->row(i).begin());
  }
  std::vector<NodeId> idx(index.begin(), index.end());
  return finish(out, "gather_rows", tape, [a, idx = std::move(idx), c](const Matrix& g, Tape& t) {
    Matrix& ga = t.grad_slot(a);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto dst = ga.row(static_cast<std::size_t>(idx[i]));
      const auto src = g.row(i);
      for (std::size_t k = 0; k < c; ++k) dst[k] += src[k];
    }
  });
}

Tensor pool_mean(const Tensor& a, std::span<const NodeId> cluster, std::size_t num_clusters) {
  if (cluster.size() != a.rows()) throw std::invalid_argument("pool_mean: cluster map size != rows");
  Tape* tape = common_tape({&a});
  const std::size_t c = a.cols();
  std::vector<double> inv_count(num_clusters, 0.0);
  for (NodeId k : cluster) {
    if (k < 0 || static_cast<std::size_t>(k) >= num_clusters) throw std::invalid_argument("pool_mean: bad cluster id");
    inv_count[static_cast<std::size_t>(k)] += 1.0;
  }
  for (auto& v : inv_count) {
    if (v == 0.0) throw std::invalid_argument("pool_mean: empty cluster");
    v = 1.0 / v;
  }
  auto out = std::make_shared<Matrix>(num_clusters, c);
  for (std::size_t i = 0; i < cluster.size(); ++i) {
    const auto k = static_cast<std::size_t>(cluster[i]);
    auto dst = out->row(k);
    const auto src = a.value().row(i);
    for (std::size_t m = 0; m < c; ++m) dst[m] += inv_count[k] * src[m];
  }
  std::vector<NodeId> cl(cluster.begin(), cluster.end());
  return finish(out, "pool_mean", tape,
                [a, cl = std::move(cl), inv_count = std::move(inv_count), c](const Matrix& g, Tape& t) {
                  Matrix& ga = t.grad_slot(a);
                  for (std::size_t i = 0; i < cl.size(); ++i) {
                    const auto k = static_cast<std::size_t>(cl[i]);
                    auto dst = ga.row(i);
                    const auto src = g.row(k);
                    for (std::size_t m = 0; m < c; ++m) dst[m] += inv_count[k] * src[m];
                  }
                });
}

Tensor row_softmax(const Tensor& a) {
  Tape* tape = common_tape({&a});
  auto out = std::make_shared<Matrix>(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto src = a.value().row(i);
    auto dst = out->row(i);
    double mx = src.empty() ? 0.0 : src[0];
    for (double v : src) mx = std::max(mx, v);
    double z = 0.0;
    for (std::size_t k = 0; k < src.size(); ++k) {
      dst[k] = std::exp(src[k] - mx);
      z += dst[k];
    }
    for (double& v : dst) v /= z;
  }
  std::shared_ptr<const Matrix> y = out;
  return finish(out, "row_softmax", tape, [a, y](const Matrix& g, Tape& t) {
    Matrix& ga = t.grad_slot(a);
    for (std::size_t i = 0; i < y->rows(); ++i) {
      const auto yr = y->row(i);
      const auto gr = g.row(i);
      double dot = 0.0;
      for (std::size_t k = 0; k < yr.size(); ++k) dot += gr[k] * yr[k];
      auto dst = ga.row(i);
      for (std::size_t k = 0; k < yr.size(); ++k) dst[k] += yr[k] * (gr[k] - dot);
    }
  });
}

Tensor gram_schmidt_qr(const Tensor& f, double eps) {
  if (f.cols() == 0 || f.cols() > f.rows()) {
    throw std::invalid_argument("gram_schmidt_qr: need 1 <= cols <= rows, got " + shape(f));
  }
  std::vector<Tensor> q;
  q.reserve(f.cols());
  for (std::size_t j = 0; j < f.cols(); ++j) {
    Tensor v = column(f, j);
    for (const auto& qi : q) v = sub(v, mul_scalar(qi, sum(hadamard(qi, v))));
    Tensor nrm = frobenius_norm(v);
    if (nrm.item() < eps) {
      throw std::domain_error("gram_schmidt_qr: rank deficient input (column " + std::to_string(j) + ")");
    }
    q.push_back(div_scalar(v, nrm));
  }
  return concat_columns(q);
}

}  // namespace gapart
