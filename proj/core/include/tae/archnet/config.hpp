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

#include <string>
#include <string_view>
#include <vector>

#include "tae/nn/layer.hpp"

namespace tae::archnet {

// H-encoder / L-decoder layer stacks for one dataset shape.
struct ArchNetConfig {
  std::string name;
  Shape input_shape;  // C,H,W
  std::vector<nn::LayerSpec> encoder_layers;
  std::vector<nn::LayerSpec> decoder_layers;

  friend bool operator==(const ArchNetConfig&, const ArchNetConfig&) = default;
};

// Throws ConfigError unless the encoder ends in a transposed convolution,
// the decoder has none, consecutive layers fit, and the decoder maps the
// encoder output back to input_shape.
void validate(const ArchNetConfig& config);

// Shape algebra only: encoder output per-sample shape.
Shape encoder_output_shape(const ArchNetConfig& config);

// Layer stacks after the reference MNIST/F-MNIST/CIFAR-10 tables, plus a
// desk-scale 8x8 variant. Convolutions are 3x3, stride 1, padding 1, except
// the first decoder convolution which uses stride 2 to undo the encoder's
// spatial doubling.
ArchNetConfig mnist_config();
ArchNetConfig fmnist_config();
ArchNetConfig cifar10_config();
ArchNetConfig desk_config();

// "mnist" | "fmnist" | "cifar10" | "desk"
ArchNetConfig config_by_name(std::string_view name);

}  // namespace tae::archnet
