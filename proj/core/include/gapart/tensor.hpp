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

// Dense row-major matrices and a small reverse-mode tape.
//
// A Tensor is a cheap handle to an immutable Matrix value. Tensors created
// from a Tape (leaves) or computed from at least one such tensor are
// "tracked": the op appends a record with its backward rule to the tape.
// Untracked tensors are plain constants, so the same forward code serves
// inference (no tape, no bookkeeping) and training.
//
// Every op checks its result for NaN/Inf and throws NonFiniteError.

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "gapart/graph.hpp"

namespace gapart {

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Matrix {
 public:
  using EigenMap = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using ConstEigenMap =
      Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n) { return identity(n, n); }
  /// Leading `cols` columns of the rows x rows identity (or padded with zeros).
  static Matrix identity(std::size_t rows, std::size_t cols);
  static Matrix column(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<double> column_values(std::size_t c) const;

  EigenMap eigen() { return {data_.data(), static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_)}; }
  ConstEigenMap eigen() const {
    return {data_.data(), static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_)};
  }

  bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }
  Matrix& operator+=(const Matrix& o);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class Tape;

class Tensor {
 public:
  Tensor() = default;
  /// Untracked constant.
  explicit Tensor(Matrix value) : value_(std::make_shared<const Matrix>(std::move(value))) {}
  explicit Tensor(std::shared_ptr<const Matrix> value) : value_(std::move(value)) {}

  const Matrix& value() const { return *value_; }
  std::size_t rows() const { return value_->rows(); }
  std::size_t cols() const { return value_->cols(); }
  double operator()(std::size_t r, std::size_t c) const { return (*value_)(r, c); }
  /// Value of a 1x1 tensor.
  double item() const;

  bool defined() const { return value_ != nullptr; }
  bool tracked() const { return tape_ != nullptr; }
  Tape* tape() const { return tape_; }
  std::size_t id() const { return id_; }

 private:
  friend class Tape;
  std::shared_ptr<const Matrix> value_;
  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Ordered record of tracked ops. Records are appended in evaluation order,
/// which is a topological order, so backward is a single reverse sweep.
/// A tape belongs to one thread at a time.
class Tape {
 public:
  using BackwardFn = std::function<void(const Matrix& out_grad, Tape& tape)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Registers a differentiable input (a parameter copy).
  Tensor leaf(Matrix value);

  /// Appends an op result. Used by op implementations.
  Tensor record(std::shared_ptr<const Matrix> value, BackwardFn backward);

  /// Adds `g` into the gradient slot of `t` when `t` lives on this tape.
  void accumulate(const Tensor& t, const Matrix& g);
  /// Mutable gradient slot of `t`, zero-initialised on first use.
  Matrix& grad_slot(const Tensor& t);

  /// Reverse sweep from a 1x1 `loss`. Clears gradients from earlier sweeps.
  /// Throws std::invalid_argument if loss is not a scalar tracked here.
  void backward(const Tensor& loss);

  /// Gradient of the last backward() w.r.t. `t`; zeros if `t` was not reached.
  Matrix grad(const Tensor& t) const;

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    std::size_t rows = 0;
    std::size_t cols = 0;
    BackwardFn backward;
    Matrix grad;
    bool has_grad = false;
  };
  std::vector<Node> nodes_;
};

// Core ops. Shape errors throw std::invalid_argument.
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor hadamard(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
Tensor add_scalar(const Tensor& a, double s);
/// a (n x c) + bias (1 x c) broadcast over rows.
Tensor add_row_vector(const Tensor& a, const Tensor& bias);
/// a (n x c) with column j multiplied by r(0, j); r is 1 x c.
Tensor mul_row_vector(const Tensor& a, const Tensor& r);
/// a times a 1x1 tensor.
Tensor mul_scalar(const Tensor& a, const Tensor& s);
/// a divided by a 1x1 tensor.
Tensor div_scalar(const Tensor& a, const Tensor& s);
/// n x c -> n x 1.
Tensor row_sum(const Tensor& a);
/// n x c -> 1 x c.
Tensor col_sum(const Tensor& a);
/// n x c -> 1 x c.
Tensor col_mean(const Tensor& a);
/// Sum of all entries, 1 x 1.
Tensor sum(const Tensor& a);
Tensor tanh(const Tensor& a);
/// Frobenius norm, 1 x 1. The gradient is a / ||a|| (undefined at zero).
Tensor frobenius_norm(const Tensor& a);
/// Column j as n x 1.
Tensor column(const Tensor& a, std::size_t j);
Tensor concat_columns(std::span<const Tensor> parts);

/// Mean over the binary-pattern neighbourhood of each node:
/// out[i,:] = mean_{j in N(i)} f[j,:]; rows of isolated nodes are zero.
/// `g` is referenced by the backward rule and must outlive the tape sweep.
Tensor spmm_pattern(const CsrGraph& g, const Tensor& f);

/// out[i,:] = a[index[i],:]. Backward scatters (sums) into a.
Tensor gather_rows(const Tensor& a, std::span<const NodeId> index);

/// out[k,:] = mean of a[i,:] over i with cluster[i] == k, for k < num_clusters.
Tensor pool_mean(const Tensor& a, std::span<const NodeId> cluster, std::size_t num_clusters);

/// Row-wise softmax with max subtraction.
Tensor row_softmax(const Tensor& a);

/// Thin QR by modified Gram-Schmidt composed from the ops above, so it is
/// differentiable end to end. Returns Q with orthonormal columns and an
/// implicit R with positive diagonal. Throws std::domain_error when a column
/// norm after projection falls below `eps`.
Tensor gram_schmidt_qr(const Tensor& f, double eps = 1e-12);

}  // namespace gapart
