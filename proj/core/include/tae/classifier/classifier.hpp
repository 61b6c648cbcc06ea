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
#include <functional>
#include <string>
#include <vector>

#include "tae/data/dataset.hpp"
#include "tae/io/checkpoint.hpp"
#include "tae/nn/network.hpp"

namespace tae::classifier {

struct ConvBlock {
  std::size_t out_channels = 8;
  bool pool = true;

  friend bool operator==(const ConvBlock&, const ConvBlock&) = default;
};

// Base model: [conv3x3 -> relu -> (maxpool2)] per block, flatten,
// linear -> relu, linear -> num_classes.
struct ClassifierConfig {
  Shape input_shape;  // C,H,W
  std::size_t num_classes = 10;
  std::vector<ConvBlock> blocks{{8, true}, {16, true}};
  std::size_t hidden = 32;

  friend bool operator==(const ClassifierConfig&, const ClassifierConfig&) = default;
};

ClassifierConfig default_config(const Shape& input_shape, std::size_t num_classes);
std::vector<nn::LayerSpec> layers_for(const ClassifierConfig& config);

struct TrainedClassifier {
  ClassifierConfig config;
  nn::Network net;
  std::string encoding;
  std::vector<double> accuracy_curve;

  // Architecture and weights only.
  io::Checkpoint to_checkpoint() const;
  static TrainedClassifier from_checkpoint(const io::Checkpoint& ckpt);
};

struct ClassifierTrainOptions {
  std::size_t epochs = 30;
  std::size_t batch = 32;
  double lr = 1e-3;
  std::uint64_t seed = 0;
  std::function<void(std::size_t, double)> on_epoch;
};

// Untrained model with seeded uniform initialization.
TrainedClassifier build_classifier(const ClassifierConfig& config, std::uint64_t seed,
                                   std::string encoding = std::string(data::kPlainEncoding));

// Cross-entropy + Adam. accuracy_curve gets one validation accuracy per
// epoch. Neither dataset is modified.
TrainedClassifier train_classifier(const ClassifierConfig& config, const data::Dataset& train,
                                   const data::Dataset& val, const ClassifierTrainOptions& options);

std::vector<int> predict(const TrainedClassifier& model, const data::Dataset& d);

// Exact fraction of argmax-correct predictions. Throws on an empty dataset
// or a shape/encoding mismatch.
double evaluate_accuracy(const TrainedClassifier& model, const data::Dataset& d);

}  // namespace tae::classifier
