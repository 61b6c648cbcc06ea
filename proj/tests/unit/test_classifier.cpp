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

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "tae/classifier/classifier.hpp"
#include "tae/data/synth.hpp"
#include "tae/error.hpp"
#include "tae/tensor/grad_check.hpp"

namespace tae::classifier {
namespace {

ClassifierTrainOptions opts(std::size_t epochs, std::uint64_t seed = 0) {
  ClassifierTrainOptions o;
  o.epochs = epochs;
  o.seed = seed;
  return o;
}

// Two classes split by the mean brightness of the left half.
data::Dataset separable(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 0.4);
  data::Dataset d;
  d.num_classes = 2;
  d.images = Tensor(Shape{n, 1, 8, 8});
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    d.labels.push_back(label);
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) d.images.at(i, 0, r, c) = u(rng) + (c < 4 && label == 1 ? 0.6 : 0.0);
  }
  return d;
}

// Final layer forced to always prefer class 0.
TrainedClassifier constant_zero(const ClassifierConfig& cfg) {
  TrainedClassifier m = build_classifier(cfg, 1);
  auto& ps = m.net.parameters();
  for (double& v : ps[ps.size() - 2].param.value.data()) v = 0.0;
  for (double& v : ps.back().param.value.data()) v = 0.0;
  ps.back().param.value[0] = 1.0;
  return m;
}

std::vector<int> argmax_recount(const TrainedClassifier& m, const data::Dataset& d) {
  std::vector<int> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Tensor logits = m.net.infer(d.rows(i, i + 1).images);
    int best = 0;
    for (std::size_t k = 1; k < logits.numel(); ++k)
      if (logits[k] > logits[static_cast<std::size_t>(best)]) best = static_cast<int>(k);
    out.push_back(best);
  }
  return out;
}

TEST(Config, OutputWidthIsClassCount) {
  const auto layers = layers_for(default_config({1, 8, 8}, 7));
  ASSERT_EQ(layers.back().kind, nn::LayerKind::kLinear);
  EXPECT_EQ(layers.back().out, 7u);
}

TEST(Train, SeparableReachesNinetyFive) {
  const data::Dataset train = separable(200, 1), val = separable(100, 2);
  const TrainedClassifier m = train_classifier(default_config({1, 8, 8}, 2), train, val, opts(30));
  ASSERT_EQ(m.accuracy_curve.size(), 30u);
  EXPECT_GE(m.accuracy_curve.back(), 0.95);
  EXPECT_GE(evaluate_accuracy(m, val), 0.95);
}

TEST(Train, ZeroEpochsIsNearChance) {
  const data::Dataset val = data::synth_shapes(400, 3);
  double total = 0.0;
  for (std::uint64_t s = 0; s < 8; ++s) {
    const TrainedClassifier m = train_classifier(default_config({1, 8, 8}, 4), val, val, opts(0, s));
    EXPECT_TRUE(m.accuracy_curve.empty());
    total += evaluate_accuracy(m, val);
  }
  EXPECT_NEAR(total / 8.0, 0.25, 0.12);
}

TEST(Train, SeedDeterminism) {
  const data::Dataset train = data::synth_shapes(64, 1), val = data::synth_shapes(32, 2);
  const auto cfg = default_config({1, 8, 8}, 4);
  EXPECT_EQ(train_classifier(cfg, train, val, opts(3, 9)).accuracy_curve,
            train_classifier(cfg, train, val, opts(3, 9)).accuracy_curve);
}

TEST(Train, DoesNotMutateInputs) {
  const data::Dataset train = data::synth_shapes(32, 1), val = data::synth_shapes(16, 2);
  const data::Dataset t0 = train, v0 = val;
  train_classifier(default_config({1, 8, 8}, 4), train, val, opts(2));
  EXPECT_EQ(train.images, t0.images);
  EXPECT_EQ(train.labels, t0.labels);
  EXPECT_EQ(val.images, v0.images);
}

TEST(Train, LearnsSynthShapes) {
  const data::Dataset train = data::synth_shapes(400, 1), val = data::synth_shapes(80, 2);
  const TrainedClassifier m = train_classifier(default_config({1, 8, 8}, 4), train, val, opts(30));
  EXPECT_GE(evaluate_accuracy(m, val), 0.8);
}

TEST(Train, Rejections) {
  const auto cfg = default_config({1, 8, 8}, 4);
  data::Dataset train = data::synth_shapes(16, 1), val = data::synth_shapes(8, 2);
  data::Dataset other = val;
  other.encoding = "rc4";
  EXPECT_THROW(train_classifier(cfg, train, other, opts(1)), Error);
  data::Dataset bad = train;
  bad.labels[0] = 4;
  EXPECT_THROW(train_classifier(cfg, bad, val, opts(1)), Error);
  EXPECT_THROW(train_classifier(cfg, train.rows(0, 0), val, opts(1)), Error);
}

TEST(Evaluate, CountsConstantPredictor) {
  const auto cfg = default_config({1, 8, 8}, 2);
  data::Dataset d = separable(10, 3);
  d.labels = {0, 0, 0, 1, 1, 1, 1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(evaluate_accuracy(constant_zero(cfg), d), 0.3);
}

TEST(Evaluate, EmptyIsAnError) {
  const TrainedClassifier m = build_classifier(default_config({1, 8, 8}, 4), 1);
  EXPECT_THROW(evaluate_accuracy(m, data::synth_shapes(4, 1).rows(0, 0)), Error);
}

TEST(Evaluate, ShapeAndEncodingMismatch) {
  const TrainedClassifier m = build_classifier(default_config({1, 8, 8}, 4), 1);
  data::SynthOptions o;
  o.size = 10;
  EXPECT_THROW(evaluate_accuracy(m, data::synth_shapes(4, 1, o)), ShapeError);
  data::Dataset enc = data::synth_shapes(4, 1);
  enc.encoding = "rc4";
  EXPECT_THROW(evaluate_accuracy(m, enc), Error);
}

TEST(Evaluate, MatchesArgmaxRecountAndIsPermutationInvariant) {
  const data::Dataset train = data::synth_shapes(64, 1), val = data::synth_shapes(40, 2);
  const TrainedClassifier m = train_classifier(default_config({1, 8, 8}, 4), train, val, opts(3));
  const std::vector<int> recount = argmax_recount(m, val);
  EXPECT_EQ(predict(m, val), recount);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < val.size(); ++i) correct += recount[i] == val.labels[i];
  const double acc = evaluate_accuracy(m, val);
  EXPECT_DOUBLE_EQ(acc, static_cast<double>(correct) / static_cast<double>(val.size()));

  std::vector<std::size_t> perm(val.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(5));
  EXPECT_DOUBLE_EQ(evaluate_accuracy(m, val.subset(perm)), acc);
}

TEST(Checkpoint, RoundTrip) {
  const TrainedClassifier m = build_classifier(default_config({3, 8, 8}, 10), 4);
  const TrainedClassifier back = TrainedClassifier::from_checkpoint(m.to_checkpoint());
  EXPECT_EQ(back.config, m.config);
  std::mt19937_64 rng(1);
  const Tensor x = testing::random_tensor(Shape{2, 3, 8, 8}, rng, 0.0, 1.0);
  EXPECT_LT(testing::max_abs_diff(m.net.infer(x), back.net.infer(x)), 1e-5);
}

TEST(Gradients, SoftmaxCrossEntropyPassesGradCheck) {
  std::mt19937_64 rng(2);
  const std::vector<int> labels{2, 0, 1};
  const double err = grad_check(
      [&](Graph&, std::span<const Var> v) { return cross_entropy(v[0], labels); },
      {testing::random_tensor(Shape{3, 4}, rng, -2.0, 2.0)}, 1e-6);
  EXPECT_LT(err, 1e-4);
}

TEST(Gradients, ClassifierNetworkPassesGradCheck) {
  TrainedClassifier m = build_classifier(default_config({1, 8, 8}, 4), 6);
  // Continuous random pixels: clamped synthetic images put ReLU inputs and
  // pooling windows exactly on kinks, where central differences are invalid.
  std::mt19937_64 rng(6);
  const Tensor x = testing::random_tensor(Shape{4, 1, 8, 8}, rng, 0.0, 1.0);
  const std::vector<int> labels{0, 1, 2, 3};
  auto ps = nn::parameter_pointers(m.net);
  const double err = grad_check(
      [&](Graph& g) { return cross_entropy(m.net.forward(g, g.constant(x)), labels); }, ps, 1e-6, 16);
  EXPECT_LT(err, 1e-4);
}

}  // namespace
}  // namespace tae::classifier
