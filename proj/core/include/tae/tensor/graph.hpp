/**
 * Copyright 2026 The ArchNet Toolkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "tae/tensor/tensor.hpp"

namespace tae {

class Graph;

// A trainable tensor. `grad` is written by Graph::backward.
struct Parameter {
  Tensor value;
  Tensor grad;

  Parameter() = default;
  explicit Parameter(Tensor v) : value(std::move(v)), grad(value.shape()) {}
  void zero_grad() { grad = Tensor(value.shape()); }
};

enum class OpKind {
  kConstant,
  kLeaf,
  kParameter,
  kConv2d,
  kConvTranspose2d,
  kLinear,
  kRelu,
  kSigmoid,
  kMaxPool2d,
  kReshape,
  kAdd,
  kMul,
  kSum,
  kBceLoss,
  kMseLoss,
  kCrossEntropy,
};

const char* op_name(OpKind kind);

// Handle to a node in a Graph. Cheap to copy; valid while the graph lives
// and has not been reset. References returned by value() stay valid as
// further nodes are recorded.
class Var {
 public:
  Var() = default;

  Graph& graph() const { return *graph_; }
  std::size_t id() const { return id_; }
  const Tensor& value() const;
  const Shape& shape() const { return value().shape(); }

 private:
  friend class Graph;
  Var(Graph* graph, std::size_t id) : graph_(graph), id_(id) {}

  Graph* graph_ = nullptr;
  std::size_t id_ = 0;
};

struct BackwardArgs {
  std::span<const Tensor* const> inputs;
  const Tensor& output;
  const Tensor& grad_output;
  // Null where the corresponding input does not require a gradient.
  std::span<Tensor* const> grad_inputs;
};

using BackwardFn = std::function<void(const BackwardArgs&)>;

// Tape of single-assignment nodes in creation (= topological) order. One
// graph serves one forward/backward pass; reset() before reuse.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var constant(Tensor value);
  // Differentiable input whose gradient stays readable after backward.
  Var leaf(Tensor value);
  // The same Parameter registered twice maps to the same node.
  Var param(Parameter& p);

  Var record(OpKind kind, std::vector<Var> inputs, Tensor output, BackwardFn backward);

  // Fills grads for leaves and writes Parameter::grad. A second call
  // without reset() throws GraphError.
  void backward(Var loss);
  void reset();

  const Tensor& value(Var v) const;
  const Tensor& grad(Var v) const;
  bool requires_grad(Var v) const;
  OpKind kind(Var v) const;
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    OpKind kind;
    std::vector<std::size_t> inputs;
    Tensor value;
    Tensor grad;
    bool requires_grad = false;
    bool has_grad = false;
    Parameter* param = nullptr;
    BackwardFn backward;
  };

  const Node& node(Var v) const;

  // Deque: references handed out by value()/grad() survive later records.
  std::deque<Node> nodes_;
  bool backward_done_ = false;
};

Var conv2d(Var x, Var kernel, Var bias, std::size_t stride = 1, std::size_t padding = 0);
Var conv_transpose2d(Var x, Var kernel, Var bias, std::size_t stride = 2);
Var linear(Var x, Var weight, Var bias);
Var relu(Var x);
Var sigmoid(Var x);
Var maxpool2d(Var x, std::size_t kernel, std::size_t stride);
Var reshape(Var x, Shape shape);
// Keeps the leading axis, flattens the rest.
Var flatten(Var x);
Var add(Var a, Var b);
Var mul(Var a, Var b);
Var sum(Var x);

inline constexpr double kBceEpsilon = 1e-7;

Var bce_loss(Var pred, Var target);
Var mse_loss(Var pred, Var target);
// Mean softmax cross-entropy of logits [N,K] against class indices.
Var cross_entropy(Var logits, std::span<const int> labels);

}  // namespace tae
