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

#include "tae/tensor/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tae/error.hpp"
#include "tae/tensor/kernels.hpp"

namespace tae {

const char* op_name(OpKind kind) {
  switch (kind) {
    case OpKind::kConstant: return "constant";
    case OpKind::kLeaf: return "leaf";
    case OpKind::kParameter: return "parameter";
    case OpKind::kConv2d: return "conv2d";
    case OpKind::kConvTranspose2d: return "conv_transpose2d";
    case OpKind::kLinear: return "linear";
    case OpKind::kRelu: return "relu";
    case OpKind::kSigmoid: return "sigmoid";
    case OpKind::kMaxPool2d: return "maxpool2d";
    case OpKind::kReshape: return "reshape";
    case OpKind::kAdd: return "add";
    case OpKind::kMul: return "mul";
    case OpKind::kSum: return "sum";
    case OpKind::kBceLoss: return "bce_loss";
    case OpKind::kMseLoss: return "mse_loss";
    case OpKind::kCrossEntropy: return "cross_entropy";
  }
  return "unknown";
}

const Tensor& Var::value() const { return graph_->value(*this); }

Var Graph::constant(Tensor value) {
  nodes_.push_back(Node{OpKind::kConstant, {}, std::move(value), {}, false, false, nullptr, {}});
  return Var(this, nodes_.size() - 1);
}

Var Graph::leaf(Tensor value) {
  nodes_.push_back(Node{OpKind::kLeaf, {}, std::move(value), {}, true, false, nullptr, {}});
  return Var(this, nodes_.size() - 1);
}

Var Graph::param(Parameter& p) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].param == &p) return Var(this, i);
  }
  nodes_.push_back(Node{OpKind::kParameter, {}, p.value, {}, true, false, &p, {}});
  return Var(this, nodes_.size() - 1);
}

Var Graph::record(OpKind kind, std::vector<Var> inputs, Tensor output, BackwardFn backward) {
  Node n{kind, {}, std::move(output), {}, false, false, nullptr, std::move(backward)};
#ifndef NDEBUG
  bool inputs_finite = true;
#endif
  for (const auto& v : inputs) {
    if (v.graph_ != this) throw GraphError(std::string(op_name(kind)) + ": input from another graph");
    n.inputs.push_back(v.id_);
    n.requires_grad = n.requires_grad || nodes_[v.id_].requires_grad;
#ifndef NDEBUG
    inputs_finite = inputs_finite && nodes_[v.id_].value.all_finite();
#endif
  }
#ifndef NDEBUG
  if (inputs_finite && !n.value.all_finite()) {
    throw GraphError(std::string(op_name(kind)) + " produced a non-finite value from finite inputs");
  }
#endif
  nodes_.push_back(std::move(n));
  return Var(this, nodes_.size() - 1);
}

void Graph::backward(Var loss) {
  if (backward_done_) throw GraphError("backward() already ran on this graph; call reset() first");
  const Node& root = node(loss);
  if (root.value.numel() != 1) {
    throw GraphError("backward() needs a scalar loss, got shape " + shape_str(root.value.shape()));
  }
  backward_done_ = true;
  if (!root.requires_grad) return;

  auto ensure_grad = [](Node& n) -> Tensor* {
    if (!n.has_grad) {
      n.grad = Tensor(n.value.shape());
      n.has_grad = true;
    }
    return &n.grad;
  };
  ensure_grad(nodes_[loss.id_])->data()[0] = 1.0;

  std::vector<const Tensor*> in_vals;
  std::vector<Tensor*> in_grads;
  for (std::size_t id = loss.id_ + 1; id-- > 0;) {
    Node& n = nodes_[id];
    if (!n.has_grad || !n.backward) continue;
    in_vals.clear();
    in_grads.clear();
    for (auto in : n.inputs) {
      Node& src = nodes_[in];
      in_vals.push_back(&src.value);
      in_grads.push_back(src.requires_grad ? ensure_grad(src) : nullptr);
    }
    n.backward(BackwardArgs{in_vals, n.value, n.grad, in_grads});
    // Intermediate gradients are not needed once propagated.
    n.grad = Tensor();
    n.has_grad = false;
  }

  for (auto& n : nodes_) {
    if (n.param) n.param->grad = n.has_grad ? n.grad : Tensor(n.value.shape());
  }
}

void Graph::reset() {
  nodes_.clear();
  backward_done_ = false;
}

const Graph::Node& Graph::node(Var v) const {
  if (v.graph_ != this || v.id_ >= nodes_.size()) throw GraphError("variable does not belong to this graph");
  return nodes_[v.id_];
}

const Tensor& Graph::value(Var v) const { return node(v).value; }

const Tensor& Graph::grad(Var v) const {
  const Node& n = node(v);
  if (!n.has_grad) throw GraphError("no gradient stored for node " + std::to_string(v.id_));
  return n.grad;
}

bool Graph::requires_grad(Var v) const { return node(v).requires_grad; }
OpKind Graph::kind(Var v) const { return node(v).kind; }

// ---------------------------------------------------------------------------
// Ops

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a.shape()) + " vs " +
                     shape_str(b.shape()));
  }
}

}  // namespace

Var conv2d(Var x, Var kernel, Var bias, std::size_t stride, std::size_t padding) {
  Tensor out = kernels::conv2d(x.value(), kernel.value(), bias.value(), stride, padding);
  return x.graph().record(OpKind::kConv2d, {x, kernel, bias}, std::move(out),
                          [stride, padding](const BackwardArgs& a) {
                            kernels::conv2d_backward(*a.inputs[0], *a.inputs[1], a.grad_output,
                                                     stride, padding, a.grad_inputs[0],
                                                     a.grad_inputs[1], a.grad_inputs[2]);
                          });
}

Var conv_transpose2d(Var x, Var kernel, Var bias, std::size_t stride) {
  Tensor out = kernels::conv_transpose2d(x.value(), kernel.value(), bias.value(), stride);
  return x.graph().record(OpKind::kConvTranspose2d, {x, kernel, bias}, std::move(out),
                          [stride](const BackwardArgs& a) {
                            kernels::conv_transpose2d_backward(
                                *a.inputs[0], *a.inputs[1], a.grad_output, stride,
                                a.grad_inputs[0], a.grad_inputs[1], a.grad_inputs[2]);
                          });
}

Var linear(Var x, Var weight, Var bias) {
  Tensor out = kernels::linear(x.value(), weight.value(), bias.value());
  return x.graph().record(OpKind::kLinear, {x, weight, bias}, std::move(out),
                          [](const BackwardArgs& a) {
                            kernels::linear_backward(*a.inputs[0], *a.inputs[1], a.grad_output,
                                                     a.grad_inputs[0], a.grad_inputs[1],
                                                     a.grad_inputs[2]);
                          });
}

Var relu(Var x) {
  Tensor out = x.value();
  for (auto& v : out.data()) v = v > 0.0 ? v : 0.0;
  return x.graph().record(OpKind::kRelu, {x}, std::move(out), [](const BackwardArgs& a) {
    if (!a.grad_inputs[0]) return;
    auto in = a.inputs[0]->data();
    auto g = a.grad_output.data();
    auto gx = a.grad_inputs[0]->data();
    for (std::size_t i = 0; i < in.size(); ++i)
      if (in[i] > 0.0) gx[i] += g[i];
  });
}

Var sigmoid(Var x) {
  Tensor out = x.value();
  for (auto& v : out.data()) v = 1.0 / (1.0 + std::exp(-v));
  return x.graph().record(OpKind::kSigmoid, {x}, std::move(out), [](const BackwardArgs& a) {
    if (!a.grad_inputs[0]) return;
    auto y = a.output.data();
    auto g = a.grad_output.data();
    auto gx = a.grad_inputs[0]->data();
    for (std::size_t i = 0; i < y.size(); ++i) gx[i] += g[i] * y[i] * (1.0 - y[i]);
  });
}

Var maxpool2d(Var x, std::size_t kernel, std::size_t stride) {
  std::vector<std::size_t> argmax;
  Tensor out = kernels::maxpool2d(x.value(), kernel, stride, &argmax);
  return x.graph().record(OpKind::kMaxPool2d, {x}, std::move(out),
                          [argmax = std::move(argmax)](const BackwardArgs& a) {
                            if (!a.grad_inputs[0]) return;
                            auto g = a.grad_output.data();
                            auto gx = a.grad_inputs[0]->data();
                            for (std::size_t i = 0; i < argmax.size(); ++i) gx[argmax[i]] += g[i];
                          });
}

Var reshape(Var x, Shape shape) {
  Tensor out = x.value().reshaped(std::move(shape));
  return x.graph().record(OpKind::kReshape, {x}, std::move(out), [](const BackwardArgs& a) {
    if (!a.grad_inputs[0]) return;
    auto g = a.grad_output.data();
    auto gx = a.grad_inputs[0]->data();
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
  });
}

Var flatten(Var x) {
  const Shape& s = x.shape();
  if (s.empty()) throw ShapeError("flatten needs a leading batch axis");
  return reshape(x, Shape{s[0], s[0] ? x.value().numel() / s[0] : 0});
}

Var add(Var a, Var b) {
  require_same_shape(a.value(), b.value(), "add");
  Tensor out = a.value();
  auto bd = b.value().data();
  auto od = out.data();
  for (std::size_t i = 0; i < od.size(); ++i) od[i] += bd[i];
  return a.graph().record(OpKind::kAdd, {a, b}, std::move(out), [](const BackwardArgs& args) {
    auto g = args.grad_output.data();
    for (auto* gi : args.grad_inputs) {
      if (!gi) continue;
      auto d = gi->data();
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i];
    }
  });
}

Var mul(Var a, Var b) {
  require_same_shape(a.value(), b.value(), "mul");
  Tensor out = a.value();
  auto bd = b.value().data();
  auto od = out.data();
  for (std::size_t i = 0; i < od.size(); ++i) od[i] *= bd[i];
  return a.graph().record(OpKind::kMul, {a, b}, std::move(out), [](const BackwardArgs& args) {
    auto g = args.grad_output.data();
    auto av = args.inputs[0]->data();
    auto bv = args.inputs[1]->data();
    if (auto* ga = args.grad_inputs[0]) {
      auto d = ga->data();
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * bv[i];
    }
    if (auto* gb = args.grad_inputs[1]) {
      auto d = gb->data();
      for (std::size_t i = 0; i < g.size(); ++i) d[i] += g[i] * av[i];
    }
  });
}

Var sum(Var x) {
  double s = 0.0;
  for (double v : x.value().data()) s += v;
  return x.graph().record(OpKind::kSum, {x}, Tensor::scalar(s), [](const BackwardArgs& a) {
    if (!a.grad_inputs[0]) return;
    const double g = a.grad_output[0];
    for (auto& v : a.grad_inputs[0]->data()) v += g;
  });
}

Var bce_loss(Var pred, Var target) {
  require_same_shape(pred.value(), target.value(), "bce_loss");
  auto p = pred.value().data();
  auto t = target.value().data();
  const double n = static_cast<double>(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double f = std::clamp(p[i], kBceEpsilon, 1.0 - kBceEpsilon);
    acc += t[i] * std::log(f) + (1.0 - t[i]) * std::log(1.0 - f);
  }
  return pred.graph().record(
      OpKind::kBceLoss, {pred, target}, Tensor::scalar(-acc / n), [n](const BackwardArgs& a) {
        auto pv = a.inputs[0]->data();
        auto tv = a.inputs[1]->data();
        const double g = a.grad_output[0] / n;
        for (std::size_t i = 0; i < pv.size(); ++i) {
          const bool clamped = pv[i] < kBceEpsilon || pv[i] > 1.0 - kBceEpsilon;
          const double f = std::clamp(pv[i], kBceEpsilon, 1.0 - kBceEpsilon);
          if (a.grad_inputs[0] && !clamped) {
            a.grad_inputs[0]->data()[i] += -g * (tv[i] / f - (1.0 - tv[i]) / (1.0 - f));
          }
          if (a.grad_inputs[1]) {
            a.grad_inputs[1]->data()[i] += -g * (std::log(f) - std::log(1.0 - f));
          }
        }
      });
}

Var mse_loss(Var pred, Var target) {
  require_same_shape(pred.value(), target.value(), "mse_loss");
  auto p = pred.value().data();
  auto t = target.value().data();
  const double n = static_cast<double>(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += (p[i] - t[i]) * (p[i] - t[i]);
  return pred.graph().record(
      OpKind::kMseLoss, {pred, target}, Tensor::scalar(acc / n), [n](const BackwardArgs& a) {
        auto pv = a.inputs[0]->data();
        auto tv = a.inputs[1]->data();
        const double g = 2.0 * a.grad_output[0] / n;
        for (std::size_t i = 0; i < pv.size(); ++i) {
          const double d = g * (pv[i] - tv[i]);
          if (a.grad_inputs[0]) a.grad_inputs[0]->data()[i] += d;
          if (a.grad_inputs[1]) a.grad_inputs[1]->data()[i] -= d;
        }
      });
}

Var cross_entropy(Var logits, std::span<const int> labels) {
  const Tensor& z = logits.value();
  if (z.rank() != 2) throw ShapeError("cross_entropy logits must be [N,K], got " + shape_str(z.shape()));
  const std::size_t n = z.dim(0), k = z.dim(1);
  if (labels.size() != n) {
    throw ShapeError("cross_entropy: " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(n) + " rows");
  }
  if (n == 0) throw ShapeError("cross_entropy on an empty batch");
  Tensor probs({n, k});
  double loss = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (labels[r] < 0 || static_cast<std::size_t>(labels[r]) >= k) {
      throw ShapeError("cross_entropy: label " + std::to_string(labels[r]) + " outside [0, " +
                       std::to_string(k) + ")");
    }
    const double* row = z.data().data() + r * k;
    const double m = *std::max_element(row, row + k);
    double denom = 0.0;
    for (std::size_t c = 0; c < k; ++c) denom += std::exp(row[c] - m);
    for (std::size_t c = 0; c < k; ++c) probs[r * k + c] = std::exp(row[c] - m) / denom;
    loss -= row[static_cast<std::size_t>(labels[r])] - m - std::log(denom);
  }
  std::vector<int> saved(labels.begin(), labels.end());
  return logits.graph().record(
      OpKind::kCrossEntropy, {logits}, Tensor::scalar(loss / static_cast<double>(n)),
      [probs = std::move(probs), saved = std::move(saved), n, k](const BackwardArgs& a) {
        if (!a.grad_inputs[0]) return;
        const double g = a.grad_output[0] / static_cast<double>(n);
        auto gz = a.grad_inputs[0]->data();
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < k; ++c) {
            const double onehot = static_cast<std::size_t>(saved[r]) == c ? 1.0 : 0.0;
            gz[r * k + c] += g * (probs[r * k + c] - onehot);
          }
      });
}

}  // namespace tae
