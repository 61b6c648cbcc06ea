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

#include "tae/nn/network.hpp"

#include <cmath>

#include "tae/error.hpp"
#include "tae/tensor/kernels.hpp"

namespace tae::nn {
namespace {

constexpr std::size_t kMetaColumns = 9;

Shape batched(std::size_t n, const Shape& feature) {
  Shape s{n};
  s.insert(s.end(), feature.begin(), feature.end());
  return s;
}

}  // namespace

Network::Network(std::string prefix, Shape input_shape, std::vector<LayerSpec> layers)
    : prefix_(std::move(prefix)), input_shape_(std::move(input_shape)), layers_(std::move(layers)) {
  if (layers_.empty()) throw ConfigError(prefix_ + ": network has no layers");
  shapes_.push_back(input_shape_);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    try {
      shapes_.push_back(infer_shape(layers_[i], shapes_.back()));
    } catch (const ConfigError& e) {
      const std::string prev = i == 0 ? std::string("input ") + shape_str(input_shape_)
                                      : "layer " + std::to_string(i - 1) + " " + layers_[i - 1].describe();
      throw ConfigError(prefix_ + ": layer " + std::to_string(i) + " " + layers_[i].describe() +
                        " is incompatible with " + prev + " (" + e.what() + ")");
    }
    if (layers_[i].has_parameters()) {
      param_index_.push_back(static_cast<std::ptrdiff_t>(params_.size()));
      const std::string base = prefix_ + "." + std::to_string(i);
      params_.push_back({base + ".weight", Parameter(Tensor(layers_[i].weight_shape()))});
      params_.push_back({base + ".bias", Parameter(Tensor(Shape{layers_[i].out}))});
    } else {
      param_index_.push_back(-1);
    }
  }
}

void Network::init_uniform(std::mt19937_64& rng) {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (param_index_[i] < 0) continue;
    const double bound = 1.0 / std::sqrt(static_cast<double>(layers_[i].fan_in()));
    std::uniform_real_distribution<double> dist(-bound, bound);
    auto& w = params_[static_cast<std::size_t>(param_index_[i])].param;
    for (auto& v : w.value.data()) v = dist(rng);
    w.zero_grad();
    auto& b = params_[static_cast<std::size_t>(param_index_[i]) + 1].param;
    b.value = Tensor(b.value.shape());
    b.zero_grad();
  }
}

const Tensor& Network::weight(std::size_t layer) const {
  return params_[static_cast<std::size_t>(param_index_[layer])].param.value;
}

const Tensor& Network::bias(std::size_t layer) const {
  return params_[static_cast<std::size_t>(param_index_[layer]) + 1].param.value;
}

Var Network::forward(Graph& graph, Var x) {
  if (Shape(x.shape().begin() + 1, x.shape().end()) != input_shape_) {
    throw ShapeError(prefix_ + ": expected per-sample input " + shape_str(input_shape_) + ", got " +
                     shape_str(x.shape()));
  }
  const std::size_t n = x.shape()[0];
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const LayerSpec& l = layers_[i];
    auto w = [&] { return graph.param(params_[static_cast<std::size_t>(param_index_[i])].param); };
    auto b = [&] { return graph.param(params_[static_cast<std::size_t>(param_index_[i]) + 1].param); };
    switch (l.kind) {
      case LayerKind::kConv: x = conv2d(x, w(), b(), l.stride, l.padding); break;
      case LayerKind::kConvTranspose: x = conv_transpose2d(x, w(), b(), l.stride); break;
      case LayerKind::kLinear:
        x = linear(x.shape().size() == 2 ? x : flatten(x), w(), b());
        if (!l.reshape.empty()) x = reshape(x, batched(n, l.reshape));
        break;
      case LayerKind::kRelu: x = relu(x); break;
      case LayerKind::kSigmoid: x = sigmoid(x); break;
      case LayerKind::kMaxPool: x = maxpool2d(x, l.kernel, l.stride); break;
    }
  }
  return x;
}

Tensor Network::infer(const Tensor& input) const {
  if (input.rank() == 0 || Shape(input.shape().begin() + 1, input.shape().end()) != input_shape_) {
    throw ShapeError(prefix_ + ": expected per-sample input " + shape_str(input_shape_) + ", got " +
                     shape_str(input.shape()));
  }
  const std::size_t n = input.dim(0);
  Tensor x = input;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const LayerSpec& l = layers_[i];
    switch (l.kind) {
      case LayerKind::kConv: x = kernels::conv2d(x, weight(i), bias(i), l.stride, l.padding); break;
      case LayerKind::kConvTranspose: x = kernels::conv_transpose2d(x, weight(i), bias(i), l.stride); break;
      case LayerKind::kLinear:
        x = kernels::linear(x.reshaped({n, n ? x.numel() / n : shape_numel(shapes_[i])}), weight(i), bias(i));
        x = x.reshaped(batched(n, shapes_[i + 1]));
        break;
      case LayerKind::kRelu:
        for (auto& v : x.data()) v = v > 0.0 ? v : 0.0;
        break;
      case LayerKind::kSigmoid:
        for (auto& v : x.data()) v = 1.0 / (1.0 + std::exp(-v));
        break;
      case LayerKind::kMaxPool: x = kernels::maxpool2d(x, l.kernel, l.stride, nullptr); break;
    }
  }
  return x;
}

std::size_t Network::parameter_count() const {
  std::size_t total = 0;
  for (const auto& p : params_) total += p.param.value.numel();
  return total;
}

void Network::append_to(io::Checkpoint& ckpt) const {
  std::vector<double> shape(input_shape_.begin(), input_shape_.end());
  ckpt.push_back({prefix_ + ".meta.input_shape", Tensor(Shape{shape.size()}, shape)});
  Tensor meta(Shape{layers_.size(), kMetaColumns});
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const LayerSpec& l = layers_[i];
    double* row = meta.data().data() + i * kMetaColumns;
    row[0] = static_cast<double>(l.kind);
    row[1] = static_cast<double>(l.in);
    row[2] = static_cast<double>(l.out);
    row[3] = static_cast<double>(l.kernel);
    row[4] = static_cast<double>(l.stride);
    row[5] = static_cast<double>(l.padding);
    for (std::size_t k = 0; k < l.reshape.size() && k < 3; ++k) row[6 + k] = static_cast<double>(l.reshape[k]);
  }
  ckpt.push_back({prefix_ + ".meta.layers", std::move(meta)});
  for (const auto& p : params_) ckpt.push_back({p.name, p.param.value});
}

Network Network::from_checkpoint(const io::Checkpoint& ckpt, const std::string& prefix) {
  auto as_size = [&](double v, const char* what) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1e9) {
      throw ConfigError(prefix + ": corrupt architecture field " + what);
    }
    return static_cast<std::size_t>(v);
  };
  const Tensor& shape_t = io::find_tensor(ckpt, prefix + ".meta.input_shape");
  Shape input;
  for (double v : shape_t.data()) input.push_back(as_size(v, "input_shape"));
  const Tensor& meta = io::find_tensor(ckpt, prefix + ".meta.layers");
  if (meta.rank() != 2 || meta.dim(1) != kMetaColumns) {
    throw ConfigError(prefix + ": architecture table has shape " + shape_str(meta.shape()));
  }
  std::vector<LayerSpec> layers;
  for (std::size_t i = 0; i < meta.dim(0); ++i) {
    const double* row = meta.data().data() + i * kMetaColumns;
    const auto kind = as_size(row[0], "kind");
    if (kind > static_cast<std::size_t>(LayerKind::kMaxPool)) throw ConfigError(prefix + ": unknown layer kind");
    LayerSpec l;
    l.kind = static_cast<LayerKind>(kind);
    l.in = as_size(row[1], "in");
    l.out = as_size(row[2], "out");
    l.kernel = as_size(row[3], "kernel");
    l.stride = as_size(row[4], "stride");
    l.padding = as_size(row[5], "padding");
    for (std::size_t k = 0; k < 3; ++k) {
      const auto d = as_size(row[6 + k], "reshape");
      if (d) l.reshape.push_back(d);
    }
    layers.push_back(std::move(l));
  }
  Network net(prefix, std::move(input), std::move(layers));
  for (auto& p : net.params_) {
    const Tensor& t = io::find_tensor(ckpt, p.name);
    if (t.shape() != p.param.value.shape()) {
      throw ShapeError(p.name + ": checkpoint shape " + shape_str(t.shape()) + " != architecture " +
                       shape_str(p.param.value.shape()));
    }
    p.param = Parameter(t);
  }
  return net;
}

bool operator==(const Network& a, const Network& b) {
  if (a.prefix_ != b.prefix_ || a.input_shape_ != b.input_shape_ || a.layers_ != b.layers_) return false;
  for (std::size_t i = 0; i < a.params_.size(); ++i) {
    if (a.params_[i].name != b.params_[i].name || !(a.params_[i].param.value == b.params_[i].param.value)) {
      return false;
    }
  }
  return true;
}

std::vector<Parameter*> parameter_pointers(Network& net) {
  std::vector<Parameter*> out;
  for (auto& p : net.parameters()) out.push_back(&p.param);
  return out;
}

}  // namespace tae::nn
