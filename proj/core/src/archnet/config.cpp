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

#include "tae/archnet/config.hpp"

#include "tae/error.hpp"

namespace tae::archnet {

using nn::LayerKind;
using nn::LayerSpec;

namespace {

Shape run_shapes(const std::string& where, Shape shape, const std::vector<LayerSpec>& layers) {
  for (std::size_t i = 0; i < layers.size(); ++i) {
    try {
      shape = nn::infer_shape(layers[i], shape);
    } catch (const ConfigError& e) {
      const std::string prev = i == 0 ? "the stack input" : "layer " + std::to_string(i - 1) + " " +
                                                                 layers[i - 1].describe();
      throw ConfigError(where + " layer " + std::to_string(i) + " " + layers[i].describe() +
                        " does not follow " + prev + ": " + e.what());
    }
  }
  return shape;
}

// Decoder shared by the 28x28 and 32x32 tables; `out_channels` is the image
// channel count.
std::vector<LayerSpec> table_decoder(std::size_t out_channels) {
  return {
      LayerSpec::conv(10, 10, 3, 2, 1),
      LayerSpec::conv(10, 30),
      LayerSpec::conv(30, 10),
      LayerSpec::conv(10, 10),
      LayerSpec::conv(10, 10),
      LayerSpec::relu(),
      LayerSpec::conv(10, 5),
      LayerSpec::conv(5, 3),
      LayerSpec::relu(),
      LayerSpec::conv(3, out_channels),
  };
}

ArchNetConfig grayscale28(std::string name) {
  return ArchNetConfig{
      std::move(name),
      {1, 28, 28},
      {
          LayerSpec::conv(1, 3),
          LayerSpec::conv(3, 10),
          LayerSpec::conv(10, 10),
          LayerSpec::linear(10 * 28 * 28, 20 * 28 * 28, {20, 28, 28}),
          LayerSpec::relu(),
          LayerSpec::conv(20, 20),
          LayerSpec::conv_transpose(20, 10),
      },
      table_decoder(1),
  };
}

}  // namespace

void validate(const ArchNetConfig& config) {
  if (config.input_shape.size() != 3) throw ConfigError(config.name + ": input shape must be C,H,W");
  if (config.encoder_layers.empty() || config.encoder_layers.back().kind != LayerKind::kConvTranspose) {
    throw ConfigError(config.name + ": the encoder must end in a transposed convolution");
  }
  for (std::size_t i = 0; i < config.decoder_layers.size(); ++i) {
    if (config.decoder_layers[i].kind == LayerKind::kConvTranspose) {
      throw ConfigError(config.name + ": decoder layer " + std::to_string(i) +
                        " is a transposed convolution; the decoder may not contain one");
    }
  }
  if (config.decoder_layers.empty()) throw ConfigError(config.name + ": the decoder is empty");
  const Shape hidden = run_shapes(config.name + ": encoder", config.input_shape, config.encoder_layers);
  const Shape back = run_shapes(config.name + ": decoder", hidden, config.decoder_layers);
  if (back != config.input_shape) {
    throw ConfigError(config.name + ": decoder output " + shape_str(back) + " does not match input " +
                      shape_str(config.input_shape));
  }
}

Shape encoder_output_shape(const ArchNetConfig& config) {
  return run_shapes(config.name + ": encoder", config.input_shape, config.encoder_layers);
}

ArchNetConfig mnist_config() { return grayscale28("mnist"); }
ArchNetConfig fmnist_config() { return grayscale28("fmnist"); }

ArchNetConfig cifar10_config() {
  return ArchNetConfig{
      "cifar10",
      {3, 32, 32},
      {
          LayerSpec::conv(3, 3),
          LayerSpec::conv(3, 10),
          LayerSpec::conv(10, 20),
          LayerSpec::conv(20, 20),
          LayerSpec::conv_transpose(20, 10),
      },
      table_decoder(3),
  };
}

ArchNetConfig desk_config() {
  return ArchNetConfig{
      "desk",
      {1, 8, 8},
      {
          LayerSpec::conv(1, 2),
          LayerSpec::conv(2, 4),
          LayerSpec::conv(4, 4),
          LayerSpec::linear(4 * 8 * 8, 8 * 8 * 8, {8, 8, 8}),
          LayerSpec::relu(),
          LayerSpec::conv(8, 8),
          LayerSpec::conv_transpose(8, 4),
      },
      {
          // Shallower than the table decoders: with fan-in uniform init and
          // zero biases a deeper 2-channel ReLU stack dies on most seeds.
          LayerSpec::conv(4, 4, 3, 2, 1),
          LayerSpec::conv(4, 8),
          LayerSpec::relu(),
          LayerSpec::conv(8, 4),
          LayerSpec::conv(4, 1),
      },
  };
}

ArchNetConfig config_by_name(std::string_view name) {
  if (name == "mnist") return mnist_config();
  if (name == "fmnist") return fmnist_config();
  if (name == "cifar10") return cifar10_config();
  if (name == "desk") return desk_config();
  throw ConfigError("unknown ArchNet config '" + std::string(name) + "' (mnist|fmnist|cifar10|desk)");
}

}  // namespace tae::archnet
