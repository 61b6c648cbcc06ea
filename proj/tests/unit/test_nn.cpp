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
#include "tae/error.hpp"
#include "tae/nn/adam.hpp"
#include "tae/nn/network.hpp"

namespace tae::nn {
namespace {

TEST(LayerSpec, ShapeInference) {
  EXPECT_EQ(infer_shape(LayerSpec::conv(1, 3), {1, 28, 28}), (Shape{3, 28, 28}));
  EXPECT_EQ(infer_shape(LayerSpec::conv(4, 4, 3, 2, 1), {4, 16, 16}), (Shape{4, 8, 8}));
  EXPECT_EQ(infer_shape(LayerSpec::conv_transpose(20, 10), {20, 28, 28}), (Shape{10, 56, 56}));
  EXPECT_EQ(infer_shape(LayerSpec::linear(40, 80, {5, 4, 4}), {10, 2, 2}), (Shape{5, 4, 4}));
  EXPECT_EQ(infer_shape(LayerSpec::linear(40, 7), {10, 2, 2}), (Shape{7}));
  EXPECT_EQ(infer_shape(LayerSpec::maxpool(), {3, 5, 5}), (Shape{3, 2, 2}));
  EXPECT_THROW(infer_shape(LayerSpec::conv(2, 3), {1, 8, 8}), ConfigError);
  EXPECT_THROW(infer_shape(LayerSpec::linear(41, 7), {10, 2, 2}), ConfigError);
  EXPECT_THROW(infer_shape(LayerSpec::linear(40, 80, {5, 4, 3}), {10, 2, 2}), ConfigError);
}

TEST(LayerSpec, ParameterCounts) {
  EXPECT_EQ(LayerSpec::conv(3, 10).parameter_count(), 10u * 3 * 9 + 10);
  EXPECT_EQ(LayerSpec::conv_transpose(20, 10).parameter_count(), 20u * 10 * 4 + 10);
  EXPECT_EQ(LayerSpec::linear(6, 4).parameter_count(), 28u);
  EXPECT_EQ(LayerSpec::relu().parameter_count(), 0u);
}

TEST(Network, MismatchNamesBothLayers) {
  try {
    Network("n", {1, 8, 8}, {LayerSpec::conv(1, 2), LayerSpec::conv(3, 4)});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find(LayerSpec::conv(1, 2).describe()), std::string::npos) << what;
    EXPECT_NE(what.find(LayerSpec::conv(3, 4).describe()), std::string::npos) << what;
  }
}

TEST(Network, UniformInitBoundsAndZeroBias) {
  Network net("n", {2, 6, 6}, {LayerSpec::conv(2, 4), LayerSpec::relu(), LayerSpec::linear(144, 5)});
  std::mt19937_64 rng(1);
  net.init_uniform(rng);
  for (const auto& p : net.parameters()) {
    const bool is_bias = p.name.ends_with(".bias");
    const double bound = p.name.starts_with("n.0.") ? 1.0 / std::sqrt(18.0) : 1.0 / std::sqrt(144.0);
    for (double v : p.param.value.data()) {
      if (is_bias) {
        EXPECT_EQ(v, 0.0) << p.name;
      } else {
        EXPECT_LE(std::abs(v), bound) << p.name;
      }
    }
  }
}

TEST(Network, SeedDeterminism) {
  auto make = [](std::uint64_t seed) {
    Network net("n", {1, 4, 4}, {LayerSpec::conv(1, 2), LayerSpec::relu(), LayerSpec::linear(32, 3)});
    std::mt19937_64 rng(seed);
    net.init_uniform(rng);
    return net;
  };
  EXPECT_TRUE(make(5) == make(5));
  EXPECT_FALSE(make(5) == make(6));
}

TEST(Network, InferMatchesGraphForward) {
  Network net("n", {2, 5, 5}, {LayerSpec::conv(2, 3), LayerSpec::relu(), LayerSpec::maxpool(),
                               LayerSpec::linear(12, 4), LayerSpec::sigmoid()});
  std::mt19937_64 rng(3);
  net.init_uniform(rng);
  const Tensor x = testing::random_tensor({3, 2, 5, 5}, rng);
  Graph g;
  EXPECT_LT(testing::max_abs_diff(net.forward(g, g.constant(x)).value(), net.infer(x)), 1e-14);
}

TEST(Network, CheckpointRoundTrip) {
  Network net("enc", {1, 4, 4}, {LayerSpec::conv(1, 2), LayerSpec::linear(32, 32, {2, 4, 4}),
                                 LayerSpec::conv_transpose(2, 1)});
  std::mt19937_64 rng(4);
  net.init_uniform(rng);
  io::Checkpoint ckpt;
  net.append_to(ckpt);
  const Network back = Network::from_checkpoint(ckpt, "enc");
  EXPECT_EQ(back.layers(), net.layers());
  EXPECT_EQ(back.input_shape(), net.input_shape());
  EXPECT_TRUE(back == net);
}

TEST(Adam, ZeroGradientLeavesParameters) {
  Parameter p(Tensor::from({3}, {1, -2, 3}));
  AdamState state(AdamOptions{.lr = 0.1});
  std::vector<Parameter*> ps{&p};
  for (int i = 0; i < 5; ++i) adam_step(ps, state);
  EXPECT_EQ(p.value, Tensor::from({3}, {1, -2, 3}));
  EXPECT_EQ(state.step_count(), 5u);
}

TEST(Adam, FirstStepMagnitudeIsLearningRate) {
  Parameter p(Tensor::scalar(0.0));
  p.grad = Tensor::scalar(1.0);
  AdamState state(AdamOptions{.lr = 1e-5});
  std::vector<Parameter*> ps{&p};
  adam_step(ps, state);
  EXPECT_NEAR(p.value.item(), -1e-5, 1e-12);
}

TEST(Adam, ConstantPositiveGradientDecreasesMonotonically) {
  Parameter p(Tensor::scalar(1.0));
  AdamState state;
  std::vector<Parameter*> ps{&p};
  double prev = p.value.item();
  for (int i = 0; i < 2; ++i) {
    p.grad = Tensor::scalar(0.5);
    adam_step(ps, state);
    EXPECT_LT(p.value.item(), prev);
    prev = p.value.item();
  }
}

TEST(Adam, ShapeMismatchAcrossSteps) {
  Parameter a(Tensor({2})), b(Tensor({3}));
  AdamState state;
  std::vector<Parameter*> first{&a}, second{&b};
  adam_step(first, state);
  EXPECT_THROW(adam_step(second, state), ShapeError);
}

}  // namespace
}  // namespace tae::nn
