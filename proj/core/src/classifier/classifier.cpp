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

#include "tae/classifier/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tae/error.hpp"
#include "tae/nn/adam.hpp"

namespace tae::classifier {
namespace {

constexpr std::size_t kInferenceChunk = 128;
constexpr const char* kPrefix = "classifier";

void check_compatible(const TrainedClassifier& model, const data::Dataset& d, const char* where) {
  if (d.sample_shape() != model.config.input_shape) {
    throw ShapeError(std::string(where) + ": samples are " + shape_str(d.sample_shape()) + ", model expects " +
                     shape_str(model.config.input_shape));
  }
  if (!model.encoding.empty() && d.encoding != model.encoding) {
    throw Error(std::string(where) + ": data encoding '" + d.encoding + "' differs from training encoding '" +
                model.encoding + "'");
  }
}

Tensor encode_string(const std::string& s) {
  std::vector<double> v(s.begin(), s.end());
  const std::size_t n = v.size();
  return Tensor(Shape{n}, std::move(v));
}

}  // namespace

ClassifierConfig default_config(const Shape& input_shape, std::size_t num_classes) {
  ClassifierConfig c;
  c.input_shape = input_shape;
  c.num_classes = num_classes;
  return c;
}

std::vector<nn::LayerSpec> layers_for(const ClassifierConfig& config) {
  if (config.input_shape.size() != 3) throw ConfigError("classifier input shape must be C,H,W");
  if (config.num_classes < 2) throw ConfigError("classifier needs at least two classes");
  std::vector<nn::LayerSpec> layers;
  Shape shape = config.input_shape;
  for (const auto& block : config.blocks) {
    layers.push_back(nn::LayerSpec::conv(shape[0], block.out_channels));
    shape = nn::infer_shape(layers.back(), shape);
    layers.push_back(nn::LayerSpec::relu());
    if (block.pool && shape[1] >= 2 && shape[2] >= 2) {
      layers.push_back(nn::LayerSpec::maxpool(2, 2));
      shape = nn::infer_shape(layers.back(), shape);
    }
  }
  layers.push_back(nn::LayerSpec::linear(shape_numel(shape), config.hidden));
  layers.push_back(nn::LayerSpec::relu());
  layers.push_back(nn::LayerSpec::linear(config.hidden, config.num_classes));
  return layers;
}

io::Checkpoint TrainedClassifier::to_checkpoint() const {
  io::Checkpoint ckpt;
  ckpt.push_back({"classifier.meta.num_classes", Tensor::scalar(static_cast<double>(config.num_classes))});
  ckpt.push_back({"classifier.meta.encoding", encode_string(encoding)});
  net.append_to(ckpt);
  return ckpt;
}

TrainedClassifier TrainedClassifier::from_checkpoint(const io::Checkpoint& ckpt) {
  TrainedClassifier model;
  model.net = nn::Network::from_checkpoint(ckpt, kPrefix);
  const auto& layers = model.net.layers();
  const auto& last = layers.back();
  if (last.kind != nn::LayerKind::kLinear) throw ConfigError("classifier checkpoint must end in a linear layer");
  const double classes = io::find_tensor(ckpt, "classifier.meta.num_classes").item();
  if (classes != static_cast<double>(last.out)) {
    throw ConfigError("classifier checkpoint: output width " + std::to_string(last.out) +
                      " disagrees with num_classes");
  }
  model.config.input_shape = model.net.input_shape();
  model.config.num_classes = last.out;
  model.config.blocks.clear();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].kind == nn::LayerKind::kConv) {
      const bool pooled = i + 2 < layers.size() && layers[i + 2].kind == nn::LayerKind::kMaxPool;
      model.config.blocks.push_back({layers[i].out, pooled});
    }
  }
  model.config.hidden = layers.size() >= 3 ? layers[layers.size() - 3].out : 0;
  if (layers_for(model.config) != layers) {
    throw ConfigError("classifier checkpoint: layer stack is not a base-model architecture");
  }
  for (double c : io::find_tensor(ckpt, "classifier.meta.encoding").data()) {
    model.encoding.push_back(static_cast<char>(static_cast<int>(c)));
  }
  return model;
}

TrainedClassifier build_classifier(const ClassifierConfig& config, std::uint64_t seed, std::string encoding) {
  TrainedClassifier model;
  model.config = config;
  model.encoding = std::move(encoding);
  model.net = nn::Network(kPrefix, config.input_shape, layers_for(config));
  std::mt19937_64 rng(seed);
  model.net.init_uniform(rng);
  return model;
}

TrainedClassifier train_classifier(const ClassifierConfig& config, const data::Dataset& train,
                                   const data::Dataset& val, const ClassifierTrainOptions& options) {
  if (train.encoding != val.encoding) {
    throw Error("train_classifier: train encoding '" + train.encoding + "' differs from validation encoding '" +
                val.encoding + "'");
  }
  for (const auto* d : {&train, &val}) {
    d->validate();
    for (int l : d->labels) {
      if (static_cast<std::size_t>(l) >= config.num_classes) {
        throw Error("train_classifier: label " + std::to_string(l) + " out of range for " +
                    std::to_string(config.num_classes) + " classes");
      }
    }
  }
  if (options.batch == 0) throw ConfigError("train_classifier: batch size must be >= 1");

  TrainedClassifier model = build_classifier(config, options.seed, train.encoding);
  check_compatible(model, train, "train_classifier");
  check_compatible(model, val, "train_classifier");
  if (options.epochs == 0) return model;
  if (train.empty()) throw Error("train_classifier: empty training set");

  auto params = nn::parameter_pointers(model.net);
  nn::AdamState optimizer(nn::AdamOptions{.lr = options.lr});
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 shuffler(options.seed ^ 0x9E3779B97F4A7C15ull);

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffler);
    for (std::size_t b = 0; b < order.size(); b += options.batch) {
      const std::size_t e = std::min(order.size(), b + options.batch);
      const auto rows = std::span(order).subspan(b, e - b);
      std::vector<int> labels;
      labels.reserve(rows.size());
      for (auto r : rows) labels.push_back(train.labels[r]);
      Graph g;
      Var logits = model.net.forward(g, g.constant(gather_rows(train.images, rows)));
      Var loss = cross_entropy(logits, labels);
      if (!std::isfinite(loss.value().item())) {
        throw TrainingError("train_classifier: non-finite loss at epoch " + std::to_string(epoch));
      }
      g.backward(loss);
      nn::adam_step(params, optimizer);
    }
    const double acc = val.empty() ? 0.0 : evaluate_accuracy(model, val);
    model.accuracy_curve.push_back(acc);
    if (options.on_epoch) options.on_epoch(epoch, acc);
  }
  return model;
}

std::vector<int> predict(const TrainedClassifier& model, const data::Dataset& d) {
  check_compatible(model, d, "predict");
  std::vector<int> out;
  out.reserve(d.size());
  const std::size_t k = model.config.num_classes;
  for (std::size_t b = 0; b < d.size(); b += kInferenceChunk) {
    const std::size_t e = std::min(d.size(), b + kInferenceChunk);
    const Tensor logits = model.net.infer(d.images.slice_rows(b, e));
    for (std::size_t r = 0; r < e - b; ++r) {
      const double* row = logits.data().data() + r * k;
      out.push_back(static_cast<int>(std::max_element(row, row + k) - row));
    }
  }
  return out;
}

double evaluate_accuracy(const TrainedClassifier& model, const data::Dataset& d) {
  if (d.empty()) throw MetricError("evaluate_accuracy: empty dataset has no accuracy");
  const auto pred = predict(model, d);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == d.labels[i] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(d.size());
}

}  // namespace tae::classifier
