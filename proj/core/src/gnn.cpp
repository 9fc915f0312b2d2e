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

#include "gapart/gnn.hpp"

#include <cmath>
#include <stdexcept>

#include "gapart/random.hpp"

namespace gapart {
namespace {

void add_sage(ParameterSet& p, const std::string& name, std::int32_t din, std::int32_t dout) {
  p.names.push_back(name + ".w_root");
  p.values.emplace_back(din, dout);
  p.names.push_back(name + ".w_neigh");
  p.values.emplace_back(din, dout);
  p.names.push_back(name + ".bias");
  p.values.emplace_back(1, dout);
}

void add_linear(ParameterSet& p, const std::string& name, std::int32_t din, std::int32_t dout) {
  p.names.push_back(name + ".w");
  p.values.emplace_back(din, dout);
  p.names.push_back(name + ".bias");
  p.values.emplace_back(1, dout);
}

void check_positive(std::int32_t v, const char* what) {
  if (v < 1) throw std::invalid_argument(std::string("network plan: ") + what + " must be positive");
}

// Every array is drawn from U(-1/sqrt(fan_in), 1/sqrt(fan_in)), where fan_in
// is the input width of the layer the array belongs to (the row count of its
// weight matrices).
void init_uniform(ParameterSet& p, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t fan_in = 1;
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto& m = p.values[k];
    if (p.names[k].ends_with(".bias")) {
      // The bias shares the fan-in of the weights before it.
    } else {
      fan_in = m.rows();
    }
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (double& v : m.values()) v = rng.uniform(-bound, bound);
  }
}

// Cursor over bound weights in layer order.
class Weights {
 public:
  explicit Weights(std::span<const Tensor> w) : w_(w) {}
  const Tensor& next() {
    if (pos_ >= w_.size()) throw std::invalid_argument("network: too few weight tensors");
    return w_[pos_++];
  }
  std::size_t position() const { return pos_; }

 private:
  std::span<const Tensor> w_;
  std::size_t pos_ = 0;
};

struct Sage {
  Tensor w_root, w_neigh, bias;
  Tensor operator()(const CsrGraph& g, const Tensor& f) const { return tanh(sage_forward(g, f, w_root, w_neigh, bias)); }
};

struct Linear {
  Tensor w, bias;
  Tensor operator()(const Tensor& f) const { return linear_forward(f, w, bias); }
};

Sage take_sage(Weights& w) {
  Sage s;
  s.w_root = w.next();
  s.w_neigh = w.next();
  s.bias = w.next();
  return s;
}

Linear take_linear(Weights& w) {
  Linear l;
  l.w = w.next();
  l.bias = w.next();
  return l;
}

std::vector<Sage> take_sages(Weights& w, std::int32_t count) {
  std::vector<Sage> out;
  for (std::int32_t t = 0; t < count; ++t) out.push_back(take_sage(w));
  return out;
}

Tensor linear_head(Weights& w, std::size_t layers, Tensor f) {
  for (std::size_t t = 0; t < layers; ++t) {
    const Linear lin = take_linear(w);
    f = lin(f);
    if (t + 1 < layers) f = tanh(f);
  }
  return f;
}

void check_weight_count(std::span<const Tensor> weights, const ParameterSet& params) {
  if (weights.size() != params.size()) {
    throw std::invalid_argument("network: expected " + std::to_string(params.size()) + " weight tensors, got " +
                                std::to_string(weights.size()));
  }
}

}  // namespace

std::size_t ParameterSet::count() const {
  std::size_t c = 0;
  for (const auto& m : values) c += m.size();
  return c;
}

std::size_t ParameterSet::index_of(const std::string& name) const {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == name) return k;
  }
  throw std::out_of_range("no parameter named '" + name + "'");
}

std::vector<Tensor> bind(const ParameterSet& params, Tape* tape) {
  std::vector<Tensor> out;
  out.reserve(params.size());
  for (const auto& m : params.values) out.push_back(tape ? tape->leaf(m) : Tensor(m));
  return out;
}

Tensor sage_forward(const CsrGraph& g, const Tensor& f, const Tensor& w_root, const Tensor& w_neigh,
                    const Tensor& bias) {
  return add(add_row_vector(matmul(f, w_root), bias), matmul(spmm_pattern(g, f), w_neigh));
}

Tensor linear_forward(const Tensor& f, const Tensor& w, const Tensor& bias) {
  return add_row_vector(matmul(f, w), bias);
}

EmbeddingNet::EmbeddingNet(EmbeddingPlan p) : plan(std::move(p)) {
  check_positive(plan.input, "input");
  check_positive(plan.hidden, "hidden");
  if (plan.smoothing < 0) throw std::invalid_argument("network plan: smoothing must be >= 0");
  if (plan.linear.empty()) throw std::invalid_argument("network plan: empty linear stack");
  add_sage(params, "sage_coarse", plan.input, plan.hidden);
  for (std::int32_t t = 0; t < plan.smoothing; ++t) {
    add_sage(params, "sage_post." + std::to_string(t), plan.hidden, plan.hidden);
  }
  std::int32_t din = plan.hidden;
  for (std::size_t t = 0; t < plan.linear.size(); ++t) {
    check_positive(plan.linear[t], "linear width");
    add_linear(params, "lin." + std::to_string(t), din, plan.linear[t]);
    din = plan.linear[t];
  }
}

EmbeddingNet EmbeddingNet::initialized(std::uint64_t seed, EmbeddingPlan plan) {
  EmbeddingNet net(std::move(plan));
  init_uniform(net.params, seed);
  return net;
}

PartitionNet::PartitionNet(PartitionPlan p) : plan(std::move(p)) {
  check_positive(plan.input, "input");
  check_positive(plan.hidden, "hidden");
  check_positive(plan.coarse, "coarse");
  if (plan.pre < 0 || plan.post < 0) throw std::invalid_argument("network plan: smoothing counts must be >= 0");
  if (plan.linear.empty()) throw std::invalid_argument("network plan: empty linear stack");
  add_sage(params, "sage_first", plan.input, plan.hidden);
  for (std::int32_t t = 0; t < plan.pre; ++t) add_sage(params, "sage_pre." + std::to_string(t), plan.hidden, plan.hidden);
  for (std::int32_t t = 0; t < plan.coarse; ++t) {
    add_sage(params, "sage_coarse." + std::to_string(t), plan.hidden, plan.hidden);
  }
  for (std::int32_t t = 0; t < plan.post; ++t) {
    add_sage(params, "sage_post." + std::to_string(t), plan.hidden, plan.hidden);
  }
  std::int32_t din = plan.hidden;
  for (std::size_t t = 0; t < plan.linear.size(); ++t) {
    check_positive(plan.linear[t], "linear width");
    add_linear(params, "lin." + std::to_string(t), din, plan.linear[t]);
    din = plan.linear[t];
  }
}

PartitionNet PartitionNet::initialized(std::uint64_t seed, PartitionPlan plan) {
  PartitionNet net(std::move(plan));
  init_uniform(net.params, seed);
  return net;
}

Tensor embedding_forward(const EmbeddingNet& net, std::span<const Tensor> weights, const Hierarchy& h) {
  check_weight_count(weights, net.params);
  Weights w(weights);
  const Sage coarse = take_sage(w);
  const auto post = take_sages(w, net.plan.smoothing);

  // Initial features: leading columns of the identity on the coarsest level
  // (the full 2x2 identity when coarsening reached two nodes).
  const auto& gc = h.coarsest();
  Tensor f(Matrix::identity(static_cast<std::size_t>(gc.num_nodes()), static_cast<std::size_t>(net.plan.input)));
  f = coarse(gc, f);
  for (std::size_t l = h.maps.size(); l-- > 0;) {
    f = interpolate(f, h.maps[l]);
    for (const auto& layer : post) f = layer(h.graphs[l], f);
  }
  f = linear_head(w, net.plan.linear.size(), f);
  return gram_schmidt_qr(f);
}

Tensor embedding_forward(const EmbeddingNet& net, const Hierarchy& h) {
  const auto weights = bind(net.params, nullptr);
  return embedding_forward(net, weights, h);
}

Tensor partition_forward(const PartitionNet& net, std::span<const Tensor> weights, const Hierarchy& h,
                         const Tensor& features) {
  check_weight_count(weights, net.params);
  if (static_cast<NodeId>(features.rows()) != h.finest().num_nodes() ||
      features.cols() != static_cast<std::size_t>(net.plan.input)) {
    throw std::invalid_argument("partition_forward: features do not match graph and plan");
  }
  Weights w(weights);
  const Sage first = take_sage(w);
  const auto pre = take_sages(w, net.plan.pre);
  const auto coarse = take_sages(w, net.plan.coarse);
  const auto post = take_sages(w, net.plan.post);

  Tensor f = first(h.finest(), features);
  std::vector<Tensor> saved(h.maps.size());
  for (std::size_t l = 0; l < h.maps.size(); ++l) {
    for (const auto& layer : pre) f = layer(h.graphs[l], f);
    saved[l] = f;
    f = restrict_mean(f, h.maps[l]);
  }
  for (const auto& layer : coarse) f = layer(h.coarsest(), f);
  for (std::size_t l = h.maps.size(); l-- > 0;) {
    f = scale(add(interpolate(f, h.maps[l]), saved[l]), 0.5);
    for (const auto& layer : post) f = layer(h.graphs[l], f);
  }
  f = linear_head(w, net.plan.linear.size(), f);
  return row_softmax(f);
}

Tensor partition_forward(const PartitionNet& net, const Hierarchy& h, const Tensor& features) {
  const auto weights = bind(net.params, nullptr);
  return partition_forward(net, weights, h, features);
}

std::vector<double> standardize_fiedler(const Matrix& embedding, std::size_t column) {
  if (column >= embedding.cols()) throw std::invalid_argument("standardize_fiedler: column out of range");
  const std::size_t n = embedding.rows();
  if (n == 0) throw std::invalid_argument("standardize_fiedler: empty embedding");
  auto f = embedding.column_values(column);
  double mean = 0.0, scale_ref = 0.0;
  for (double v : f) {
    mean += v;
    scale_ref = std::max(scale_ref, std::abs(v));
  }
  mean /= static_cast<double>(n);
  double spread = 0.0;
  for (double& v : f) {
    v -= mean;
    spread = std::max(spread, std::abs(v));
  }
  if (spread <= 1e-12 * std::max(scale_ref, 1e-300)) {
    throw std::domain_error("standardize_fiedler: column has zero variance");
  }
  const double s = std::sqrt(static_cast<double>(n));
  for (double& v : f) v *= s;
  return f;
}

}  // namespace gapart
