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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tae/io/checkpoint.hpp"
#include "tae/nn/layer.hpp"
#include "tae/tensor/graph.hpp"

namespace tae::nn {

struct NamedParameter {
  std::string name;
  Parameter param;
};

// A validated feed-forward stack with its parameters. Parameter names are
// "<prefix>.<layer index>.weight|bias".
class Network {
 public:
  Network() = default;
  // Throws ConfigError naming both layers when consecutive specs disagree.
  Network(std::string prefix, Shape input_shape, std::vector<LayerSpec> layers);

  Network(const Network&) = default;
  Network& operator=(const Network&) = default;
  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  // Weights ~ U[-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero.
  void init_uniform(std::mt19937_64& rng);

  Var forward(Graph& graph, Var x);
  // Gradient-free batch inference.
  Tensor infer(const Tensor& x) const;

  const std::string& prefix() const { return prefix_; }
  const Shape& input_shape() const { return input_shape_; }
  const Shape& output_shape() const { return shapes_.back(); }
  // Feature shape after each layer (index 0 is the input).
  const std::vector<Shape>& shapes() const { return shapes_; }
  const std::vector<LayerSpec>& layers() const { return layers_; }

  std::vector<NamedParameter>& parameters() { return params_; }
  const std::vector<NamedParameter>& parameters() const { return params_; }
  std::size_t parameter_count() const;

  // Architecture rides along as "<prefix>.meta.input_shape" and
  // "<prefix>.meta.layers" tensors.
  void append_to(io::Checkpoint& ckpt) const;
  static Network from_checkpoint(const io::Checkpoint& ckpt, const std::string& prefix);

  friend bool operator==(const Network& a, const Network& b);

 private:
  const Tensor& weight(std::size_t layer) const;
  const Tensor& bias(std::size_t layer) const;

  std::string prefix_;
  Shape input_shape_;
  std::vector<LayerSpec> layers_;
  std::vector<Shape> shapes_;
  std::vector<NamedParameter> params_;
  // Index into params_ of each layer's weight (bias follows), or -1.
  std::vector<std::ptrdiff_t> param_index_;
};

std::vector<Parameter*> parameter_pointers(Network& net);

}  // namespace tae::nn
