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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tae/archnet/archnet.hpp"
#include "tae/data/synth.hpp"
#include "tae/error.hpp"

namespace tae::archnet {
namespace {

// Sum of per-layer counts written out by hand: conv = out*in*9+out,
// transposed 2x2 = in*out*4+out, linear = in*out+out.
constexpr std::size_t kDeskEncoder = 20 + 76 + 148 + (256 * 512 + 512) + 584 + 132;
constexpr std::size_t kDeskDecoder = 148 + 296 + 292 + 37;
constexpr std::size_t kMnistEncoder = 30 + 280 + 910 + (7840 * 15680 + 15680) + 3620 + 810;
constexpr std::size_t kMnistDecoder = 910 + 2730 + 2710 + 910 + 910 + 455 + 138 + 28;

TrainOptions desk_options(std::size_t epochs) {
  TrainOptions o;
  o.epochs = epochs;
  o.batch = 32;
  o.adam.lr = 1e-3;
  return o;
}

TEST(Config, ShippedConfigsValidate) {
  for (const char* name : {"mnist", "fmnist", "cifar10", "desk"}) {
    EXPECT_NO_THROW(validate(config_by_name(name))) << name;
  }
  EXPECT_THROW(config_by_name("imagenet"), ConfigError);
}

TEST(Config, MnistCiphertextShape) {
  EXPECT_EQ(encoder_output_shape(mnist_config()), (Shape{10, 56, 56}));
  EXPECT_EQ(encoder_output_shape(cifar10_config()), (Shape{10, 64, 64}));
  EXPECT_EQ(encoder_output_shape(desk_config()), (Shape{4, 16, 16}));
}

TEST(Config, EncoderRaisesDimension) {
  for (const char* name : {"mnist", "fmnist", "cifar10", "desk"}) {
    const ArchNetConfig c = config_by_name(name);
    EXPECT_GT(shape_numel(encoder_output_shape(c)), shape_numel(c.input_shape)) << name;
  }
}

TEST(Config, RejectsStructuralViolations) {
  ArchNetConfig c = desk_config();
  c.encoder_layers.pop_back();
  EXPECT_THROW(validate(c), ConfigError);

  c = desk_config();
  c.decoder_layers.insert(c.decoder_layers.begin(), nn::LayerSpec::conv_transpose(4, 4));
  EXPECT_THROW(validate(c), ConfigError);

  c = desk_config();
  c.decoder_layers.back() = nn::LayerSpec::conv(4, 2);
  EXPECT_THROW(validate(c), ConfigError);

  c = desk_config();
  c.encoder_layers[1] = nn::LayerSpec::conv(3, 4);
  try {
    build_archnet(c, 0);
    FAIL();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find(c.encoder_layers[0].describe()), std::string::npos) << what;
    EXPECT_NE(what.find(c.encoder_layers[1].describe()), std::string::npos) << what;
  }
}

TEST(Build, DeskParameterCount) {
  const TrainedArchNet net = build_archnet(desk_config(), 1);
  EXPECT_EQ(net.encoder.parameter_count(), kDeskEncoder);
  EXPECT_EQ(net.decoder.parameter_count(), kDeskDecoder);
  EXPECT_EQ(net.parameter_count(), 133317u);
}

// Allocates roughly 2 GB of values and gradients.
TEST(Build, MnistTableConfigBuilds) {
  const TrainedArchNet net = build_archnet(mnist_config(), 1);
  EXPECT_EQ(net.parameter_count(), kMnistEncoder + kMnistDecoder);
  EXPECT_EQ(net.parameter_count(), 122961321u);
}

TEST(Build, SeedDeterminismAndInitBounds) {
  const TrainedArchNet a = build_archnet(desk_config(), 7), b = build_archnet(desk_config(), 7);
  EXPECT_TRUE(a.encoder == b.encoder);
  EXPECT_TRUE(a.decoder == b.decoder);
  EXPECT_FALSE(a.encoder == build_archnet(desk_config(), 8).encoder);
  for (const nn::Network* net : {&a.encoder, &a.decoder}) {
    for (std::size_t l = 0, k = 0; l < net->layers().size(); ++l) {
      const nn::LayerSpec& spec = net->layers()[l];
      if (!spec.has_parameters()) continue;
      const double bound = 1.0 / std::sqrt(static_cast<double>(spec.fan_in()));
      for (double v : net->parameters()[k].param.value.data()) EXPECT_LE(std::abs(v), bound);
      for (double v : net->parameters()[k + 1].param.value.data()) EXPECT_EQ(v, 0.0);
      k += 2;
    }
  }
}

TEST(Train, EpochsZeroLeavesEverything) {
  TrainedArchNet net = build_archnet(desk_config(), 2);
  const TrainedArchNet before = net;
  train_identity(net, data::synth_shapes(16, 1), desk_options(0));
  EXPECT_TRUE(net.encoder == before.encoder);
  EXPECT_TRUE(net.decoder == before.decoder);
  EXPECT_TRUE(net.loss_curve.empty());
}

TEST(Train, ZeroLearningRateIsNullStep) {
  TrainedArchNet net = build_archnet(desk_config(), 2);
  const TrainedArchNet before = net;
  TrainOptions o = desk_options(3);
  o.adam.lr = 0.0;
  train_identity(net, data::synth_shapes(16, 1), o);
  EXPECT_TRUE(net.encoder == before.encoder);
  EXPECT_TRUE(net.decoder == before.decoder);
  EXPECT_EQ(net.loss_curve.size(), 3u);
}

TEST(Train, ConvergesOnSynthetic) {
  TrainedArchNet net = build_archnet(desk_config(), 1);
  const data::Dataset train = data::synth_shapes(64, 1);
  train_identity(net, train, desk_options(200));
  ASSERT_EQ(net.loss_curve.size(), 200u);
  for (double l : net.loss_curve) ASSERT_TRUE(std::isfinite(l));
  EXPECT_LT(net.loss_curve.back(), 0.1 * net.loss_curve.front());
}

TEST(Train, DeterministicPerSeed) {
  const data::Dataset train = data::synth_shapes(32, 4);
  TrainedArchNet a = build_archnet(desk_config(), 3), b = build_archnet(desk_config(), 3);
  train_identity(a, train, desk_options(3));
  train_identity(b, train, desk_options(3));
  EXPECT_EQ(a.loss_curve, b.loss_curve);
  EXPECT_TRUE(a.encoder == b.encoder);
}

TEST(Train, BceLossRuns) {
  TrainedArchNet net = build_archnet(desk_config(), 5);
  TrainOptions o = desk_options(20);
  o.loss = LossKind::kBce;
  train_identity(net, data::synth_shapes(32, 5), o);
  EXPECT_LT(net.loss_curve.back(), net.loss_curve.front());
  const data::Dataset out = decrypt_dataset(net, encrypt_dataset(net, data::synth_shapes(8, 6)));
  for (double v : out.images.data()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Train, RejectsWrongShape) {
  TrainedArchNet net = build_archnet(desk_config(), 1);
  data::SynthOptions big;
  big.size = 10;
  EXPECT_THROW(train_identity(net, data::synth_shapes(8, 1, big), desk_options(1)), ShapeError);
}

TEST(Encrypt, ShapesLabelsDeterminism) {
  const TrainedArchNet net = build_archnet(desk_config(), 1);
  const data::Dataset plain = data::synth_shapes(12, 3);
  const data::Dataset enc = encrypt_dataset(net, plain);
  EXPECT_EQ(enc.images.shape(), (Shape{12, 4, 16, 16}));
  EXPECT_EQ(enc.labels, plain.labels);
  EXPECT_EQ(enc.encoding, encoding_tag(net));
  EXPECT_EQ(encrypt_dataset(net, plain).images, enc.images);
  const data::Dataset dec = decrypt_dataset(net, enc);
  EXPECT_EQ(dec.images.shape(), plain.images.shape());
  EXPECT_EQ(dec.labels, enc.labels);
  EXPECT_EQ(encrypt_dataset(net, plain.rows(0, 0)).size(), 0u);
  EXPECT_THROW(decrypt_dataset(net, plain), ShapeError);
}

TEST(Encrypt, TrainedRoundTripOnHeldOut) {
  TrainedArchNet net = build_archnet(desk_config(), 1);
  train_identity(net, data::synth_shapes(400, 11), desk_options(100));
  const data::Dataset held = data::synth_shapes(80, 12);
  const data::Dataset back = decrypt_dataset(net, encrypt_dataset(net, held));
  double mae = 0.0;
  for (std::size_t k = 0; k < held.images.numel(); ++k) mae += std::abs(back.images[k] - held.images[k]);
  EXPECT_LT(mae / static_cast<double>(held.images.numel()), 0.05);
}

TEST(Checkpoint, RoundTripKeepsBehaviour) {
  TrainedArchNet net = build_archnet(desk_config(), 1);
  train_identity(net, data::synth_shapes(16, 1), desk_options(2));
  const TrainedArchNet back = TrainedArchNet::from_checkpoint(net.to_checkpoint());
  EXPECT_EQ(back.config, net.config);
  const data::Dataset x = data::synth_shapes(4, 2);
  const Tensor a = encrypt_dataset(net, x).images, b = encrypt_dataset(back, x).images;
  EXPECT_LT(testing::max_abs_diff(a, b), 1e-5);
}

}  // namespace
}  // namespace tae::archnet
