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

#include "tae/archnet/archnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tae/error.hpp"

namespace tae::archnet {
namespace {

constexpr std::size_t kInferenceChunk = 64;

// Strings and seeds ride in float32 tensors; keep each element < 2^24.
Tensor encode_string(const std::string& s) {
  std::vector<double> v(s.begin(), s.end());
  const std::size_t n = v.size();
  return Tensor(Shape{n}, std::move(v));
}

std::string decode_string(const Tensor& t) {
  std::string s;
  for (double v : t.data()) s.push_back(static_cast<char>(static_cast<int>(v)));
  return s;
}

Tensor encode_seed(std::uint64_t seed) {
  std::vector<double> v(4);
  for (std::size_t i = 0; i < 4; ++i) v[i] = static_cast<double>((seed >> (16 * i)) & 0xFFFF);
  return Tensor(Shape{4}, std::move(v));
}

std::uint64_t decode_seed(const Tensor& t) {
  std::uint64_t seed = 0;
  for (std::size_t i = 0; i < 4 && i < t.numel(); ++i) {
    seed |= static_cast<std::uint64_t>(t[i]) << (16 * i);
  }
  return seed;
}

Tensor run_chunked(const nn::Network& net, const Tensor& images) {
  const std::size_t n = images.dim(0);
  Shape out_shape{n};
  out_shape.insert(out_shape.end(), net.output_shape().begin(), net.output_shape().end());
  Tensor out(out_shape);
  const std::size_t row = shape_numel(net.output_shape());
  for (std::size_t b = 0; b < n; b += kInferenceChunk) {
    const std::size_t e = std::min(n, b + kInferenceChunk);
    Tensor y = net.infer(images.slice_rows(b, e));
    std::copy(y.data().begin(), y.data().end(), out.data().begin() + static_cast<std::ptrdiff_t>(b * row));
  }
  return out;
}

void ensure_sigmoid_output(TrainedArchNet& net) {
  if (net.config.decoder_layers.back().kind == nn::LayerKind::kSigmoid) return;
  net.config.decoder_layers.push_back(nn::LayerSpec::sigmoid());
  nn::Network decoder(net.decoder.prefix(), net.decoder.input_shape(), net.config.decoder_layers);
  for (std::size_t i = 0; i < decoder.parameters().size(); ++i) {
    decoder.parameters()[i].param = net.decoder.parameters()[i].param;
  }
  net.decoder = std::move(decoder);
}

}  // namespace

LossKind parse_loss(std::string_view name) {
  if (name == "mse") return LossKind::kMse;
  if (name == "bce") return LossKind::kBce;
  throw ConfigError("unknown loss '" + std::string(name) + "' (mse|bce)");
}

const char* loss_name(LossKind kind) { return kind == LossKind::kMse ? "mse" : "bce"; }

std::vector<Parameter*> TrainedArchNet::parameters() {
  auto out = nn::parameter_pointers(encoder);
  auto dec = nn::parameter_pointers(decoder);
  out.insert(out.end(), dec.begin(), dec.end());
  return out;
}

io::Checkpoint TrainedArchNet::to_checkpoint() const {
  io::Checkpoint ckpt;
  ckpt.push_back({"archnet.meta.name", encode_string(config.name)});
  ckpt.push_back({"archnet.meta.seed", encode_seed(rng_seed)});
  ckpt.push_back({"archnet.loss_curve", Tensor(Shape{loss_curve.size()}, loss_curve)});
  encoder.append_to(ckpt);
  decoder.append_to(ckpt);
  return ckpt;
}

TrainedArchNet TrainedArchNet::from_checkpoint(const io::Checkpoint& ckpt) {
  TrainedArchNet net;
  net.encoder = nn::Network::from_checkpoint(ckpt, "encoder");
  net.decoder = nn::Network::from_checkpoint(ckpt, "decoder");
  net.config = ArchNetConfig{decode_string(io::find_tensor(ckpt, "archnet.meta.name")),
                             net.encoder.input_shape(), net.encoder.layers(), net.decoder.layers()};
  validate(net.config);
  net.rng_seed = decode_seed(io::find_tensor(ckpt, "archnet.meta.seed"));
  const auto curve = io::find_tensor(ckpt, "archnet.loss_curve").data();
  net.loss_curve.assign(curve.begin(), curve.end());
  return net;
}

TrainedArchNet build_archnet(const ArchNetConfig& config, std::uint64_t seed) {
  validate(config);
  TrainedArchNet net;
  net.config = config;
  net.rng_seed = seed;
  net.encoder = nn::Network("encoder", config.input_shape, config.encoder_layers);
  net.decoder = nn::Network("decoder", net.encoder.output_shape(), config.decoder_layers);
  std::mt19937_64 rng(seed);
  net.encoder.init_uniform(rng);
  net.decoder.init_uniform(rng);
  return net;
}

void train_identity(TrainedArchNet& net, const data::Dataset& data, const TrainOptions& options,
                    nn::AdamState& optimizer) {
  if (data.sample_shape() != net.config.input_shape) {
    throw ShapeError("train_identity: data samples are " + shape_str(data.sample_shape()) + ", config expects " +
                     shape_str(net.config.input_shape));
  }
  if (options.batch == 0) throw ConfigError("train_identity: batch size must be >= 1");
  if (options.epochs == 0) return;
  data::validate_pixels(data);
  if (options.loss == LossKind::kBce) ensure_sigmoid_output(net);

  auto params = net.parameters();
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 shuffler(net.rng_seed ^ 0x5DEECE66Dull);

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffler);
    double total = 0.0;
    for (std::size_t b = 0, batch_index = 0; b < order.size(); b += options.batch, ++batch_index) {
      const std::size_t e = std::min(order.size(), b + options.batch);
      const Tensor x = gather_rows(data.images, std::span(order).subspan(b, e - b));
      Graph g;
      Var input = g.constant(x);
      Var recon = net.decoder.forward(g, net.encoder.forward(g, input));
      Var loss = options.loss == LossKind::kMse ? mse_loss(recon, input) : bce_loss(recon, input);
      const double value = loss.value().item();
      if (!std::isfinite(value)) {
        throw TrainingError("train_identity: non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                            std::to_string(batch_index));
      }
      g.backward(loss);
      nn::adam_step(params, optimizer);
      total += value * static_cast<double>(e - b);
    }
    const double mean = total / static_cast<double>(order.size());
    net.loss_curve.push_back(mean);
    if (options.on_epoch) options.on_epoch(epoch, mean);
  }
}

void train_identity(TrainedArchNet& net, const data::Dataset& data, const TrainOptions& options) {
  nn::AdamState optimizer(options.adam);
  train_identity(net, data, options, optimizer);
}

std::string encoding_tag(const TrainedArchNet& net) { return "archnet:" + net.config.name; }

data::Dataset encrypt_dataset(const TrainedArchNet& net, const data::Dataset& data) {
  if (data.sample_shape() != net.config.input_shape) {
    throw ShapeError("encrypt_dataset: data samples are " + shape_str(data.sample_shape()) +
                     ", encoder expects " + shape_str(net.config.input_shape));
  }
  data::Dataset out = data;
  out.encoding = encoding_tag(net);
  out.images = run_chunked(net.encoder, data.images);
  return out;
}

data::Dataset decrypt_dataset(const TrainedArchNet& net, const data::Dataset& encrypted) {
  if (encrypted.sample_shape() != net.decoder.input_shape()) {
    throw ShapeError("decrypt_dataset: ciphertext samples are " + shape_str(encrypted.sample_shape()) +
                     ", decoder expects " + shape_str(net.decoder.input_shape()));
  }
  data::Dataset out = encrypted;
  out.encoding = std::string(data::kPlainEncoding);
  out.images = run_chunked(net.decoder, encrypted.images);
  return out;
}

}  // namespace tae::archnet
