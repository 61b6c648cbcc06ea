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
#include <string>

#include "tae/tensor/tensor.hpp"

namespace tae::nn {

enum class LayerKind : int {
  kConv = 0,
  kConvTranspose = 1,
  kLinear = 2,
  kRelu = 3,
  kSigmoid = 4,
  kMaxPool = 5,
};

// One layer of a feed-forward stack. `in`/`out` are channels for the
// convolutions and features for linear. A linear layer flattens its input;
// when `reshape` is non-empty its output is viewed as [N, reshape...].
struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  std::size_t in = 0;
  std::size_t out = 0;
  std::size_t kernel = 0;
  std::size_t stride = 1;
  std::size_t padding = 0;
  Shape reshape;

  // Shape-preserving 3x3 convolution unless told otherwise.
  static LayerSpec conv(std::size_t in, std::size_t out, std::size_t kernel = 3,
                        std::size_t stride = 1, std::size_t padding = 1);
  // Defaults double the spatial extent.
  static LayerSpec conv_transpose(std::size_t in, std::size_t out, std::size_t kernel = 2,
                                  std::size_t stride = 2);
  static LayerSpec linear(std::size_t in, std::size_t out, Shape reshape = {});
  static LayerSpec relu();
  static LayerSpec sigmoid();
  static LayerSpec maxpool(std::size_t kernel = 2, std::size_t stride = 2);

  bool has_parameters() const;
  std::size_t fan_in() const;
  std::size_t parameter_count() const;
  Shape weight_shape() const;
  std::string describe() const;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

const char* layer_kind_name(LayerKind kind);

// Per-sample feature shape after `spec`, or ConfigError if `in` is not a
// valid input for it.
Shape infer_shape(const LayerSpec& spec, const Shape& in);

}  // namespace tae::nn
