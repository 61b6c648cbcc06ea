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
#include "tae/data/synth.hpp"
#include "tae/error.hpp"
#include "tae/io/png.hpp"
#include "tae/metrics/correlation.hpp"
#include "tae/metrics/ec.hpp"
#include "tae/metrics/experiment.hpp"
#include "tae/metrics/visualize.hpp"

namespace tae::metrics {
namespace {

TEST(Ec, ReferenceTableRows) {
  EXPECT_NEAR(ec_value(0.9731, 0.9726), 0.0005, 5e-5);
  EXPECT_EQ(format_percent(ec_value(0.9731, 0.9726)), "0.05%");
  EXPECT_NEAR(ec_value(0.8231, 0.8415), -0.0224, 5e-5);
  EXPECT_EQ(format_percent(ec_value(0.8231, 0.8415)), "-2.23%");
  EXPECT_NEAR(ec_value(0.8022, 0.1065), 0.8672, 5e-5);
  EXPECT_EQ(format_percent(ec_value(0.8022, 0.1065)), "86.72%");
}

TEST(Ec, IdentityAndSignLaw) {
  for (double x : {0.01, 0.3, 0.5, 1.0}) EXPECT_EQ(ec_value(x, x), 0.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double ao = 0.01 + 0.99 * u(rng), ae = u(rng);
    EXPECT_EQ(ae > ao, ec_value(ao, ae) < 0.0);
    EXPECT_DOUBLE_EQ(ec_value(ao, ae), (ao - ae) / ao);
  }
}

TEST(Ec, DomainErrors) {
  EXPECT_THROW(ec_value(0.0, 0.5), MetricError);
  EXPECT_THROW(ec_value(1.2, 0.5), MetricError);
  EXPECT_THROW(ec_value(0.5, -0.1), MetricError);
  EXPECT_THROW(ec_value(std::nan(""), 0.5), MetricError);
}

TEST(Ec, FormatPercentTruncates) {
  EXPECT_EQ(format_percent(0.12345), "12.34%");
  EXPECT_EQ(format_percent(-0.12345), "-12.34%");
  EXPECT_EQ(format_percent(0.0), "0.00%");
  EXPECT_EQ(format_percent(1.0, 0), "100%");
}

TEST(Report, JsonRoundTripAndLine) {
  EcReport r;
  r.dataset = "synth";
  r.encryptor = "rc4";
  r.epochs = 30;
  r.ao = 0.9;
  r.ae = 0.2;
  r.ec = ec_value(0.9, 0.2);
  r.classifier_digest = "abc";
  r.seeds = {1, 2};
  r.ao_curve = {0.5, 0.9};
  r.ae_curve = {0.1, 0.2};
  const EcReport back = EcReport::from_json(r.to_json());
  EXPECT_EQ(back.dataset, r.dataset);
  EXPECT_EQ(back.encryptor, r.encryptor);
  EXPECT_EQ(back.epochs, r.epochs);
  EXPECT_EQ(back.ao, r.ao);
  EXPECT_EQ(back.ec, r.ec);
  EXPECT_EQ(back.seeds, r.seeds);
  EXPECT_EQ(back.ae_curve, r.ae_curve);
  const std::string line = r.to_line();
  EXPECT_EQ(line.rfind("ec dataset=synth encryptor=rc4 epochs=30", 0), 0u) << line;
  EXPECT_NE(line.find("ec_pct=77.77%"), std::string::npos) << line;
  EXPECT_THROW(EcReport::from_json("{"), Error);
}

TEST(Experiment, NullEncryptorIsExactFixedPoint) {
  const data::Dataset plain = data::split(data::synth_shapes(60, 1), {5, 1}, 1);
  ExperimentOptions o;
  o.classifier_epochs = 3;
  o.seed = 4;
  const EcReport r = ec_experiment(plain, EncryptorSpec{}, o);
  EXPECT_EQ(r.ao, r.ae);
  EXPECT_EQ(r.ec, 0.0);
  EXPECT_EQ(r.ao_curve, r.ae_curve);
  EXPECT_EQ(r.encryptor, "none");
  EXPECT_EQ(r.epochs, 3u);
}

TEST(Experiment, ParallelArmsMatchSequential) {
  const data::Dataset plain = data::split(data::synth_shapes(60, 1), {5, 1}, 1);
  EncryptorSpec spec;
  spec.kind = EncryptorKind::kRc4;
  ExperimentOptions o;
  o.classifier_epochs = 2;
  const EcReport seq = ec_experiment(plain, spec, o);
  o.parallel_arms = true;
  const EcReport par = ec_experiment(plain, spec, o);
  EXPECT_EQ(seq.ao_curve, par.ao_curve);
  EXPECT_EQ(seq.ae_curve, par.ae_curve);
}

TEST(Experiment, RequiresSplit) {
  EXPECT_THROW(ec_experiment(data::synth_shapes(20, 1), EncryptorSpec{}, ExperimentOptions{}), Error);
  EXPECT_THROW(parse_encryptor("aes"), Error);
  EXPECT_EQ(parse_encryptor("archnet"), EncryptorKind::kArchNet);
}

TEST(Experiment, DigestTracksArchitecture) {
  const auto a = classifier::default_config({1, 8, 8}, 4);
  auto b = a;
  b.hidden = 33;
  EXPECT_EQ(classifier_digest(a), classifier_digest(a));
  EXPECT_NE(classifier_digest(a), classifier_digest(b));
}

TEST(Visualize, CiphertextChannelsToRgb) {
  std::mt19937_64 rng(1);
  const Tensor sample = testing::random_tensor(Shape{10, 56, 56}, rng, -3.0, 3.0);
  const io::Bytes png = render_channels_png(sample, {0, 1, 2});
  const io::RgbImage img = io::decode_png_rgb(png);
  EXPECT_EQ(img.width, 56u);
  EXPECT_EQ(img.height, 56u);
  EXPECT_EQ(render_channels_png(sample, {0, 1, 2}), png);
  std::uint8_t lo = 255, hi = 0;
  for (std::size_t p = 0; p < 56 * 56; ++p) {
    lo = std::min(lo, img.pixels[p * 3 + 1]);
    hi = std::max(hi, img.pixels[p * 3 + 1]);
  }
  EXPECT_EQ(lo, 0);
  EXPECT_EQ(hi, 255);
  EXPECT_THROW(render_channels_png(sample, {0, 1, 10}), ShapeError);
}

TEST(Visualize, ConstantChannelIsMidGray) {
  const Tensor sample(Shape{3, 4, 4}, 0.7);
  const io::RgbImage img = io::decode_png_rgb(render_channels_png(sample, {0, 1, 2}));
  for (std::uint8_t v : img.pixels) EXPECT_EQ(v, 128);
}

TEST(Visualize, FileIsByteIdentical) {
  std::mt19937_64 rng(2);
  const Tensor sample = testing::random_tensor(Shape{4, 8, 8}, rng);
  testing::TempDir dir("viz");
  visualize_channels(sample, {3, 2, 1}, dir / "a.png");
  visualize_channels(sample, {3, 2, 1}, dir / "b.png");
  EXPECT_EQ(io::read_file(dir / "a.png"), io::read_file(dir / "b.png"));
}

TEST(Visualize, CurvesRender) {
  const std::vector<std::vector<double>> curves{{1.0, 0.5, 0.25}, {0.2, 0.4, 0.8}};
  const io::RgbImage img = io::decode_png_rgb(render_curves_png(curves, 100, 60));
  EXPECT_EQ(img.width, 100u);
  EXPECT_EQ(img.height, 60u);
}

TEST(Correlation, SelfNegationNoise) {
  std::mt19937_64 rng(3);
  const Tensor a = testing::random_tensor(Shape{32, 32}, rng);
  Tensor neg = a;
  for (double& v : neg.data()) v = -v;
  EXPECT_NEAR(pixel_correlation(a, a), 1.0, 1e-12);
  EXPECT_NEAR(pixel_correlation(a, neg), -1.0, 1e-12);
  const Tensor noise = testing::random_tensor(Shape{32, 32}, rng);
  EXPECT_LT(std::abs(pixel_correlation(a, noise)), 0.1);
}

TEST(Correlation, ResamplesLargerToSmaller) {
  Tensor small(Shape{4, 4}), big(Shape{7, 7});
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) small[r * 4 + c] = static_cast<double>(r + 2 * c);
  for (std::size_t r = 0; r < 7; ++r)
    for (std::size_t c = 0; c < 7; ++c) big[r * 7 + c] = static_cast<double>(r + 2 * c) * 0.5;
  // Both are the same linear ramp, which bilinear resampling reproduces.
  EXPECT_NEAR(pixel_correlation(small, big), 1.0, 1e-12);
  EXPECT_NEAR(pixel_correlation(big, small), 1.0, 1e-12);
  EXPECT_EQ(resample_bilinear(small, 4, 4), small);
}

TEST(Correlation, ConstantIsUndefined) {
  std::mt19937_64 rng(4);
  EXPECT_THROW(pixel_correlation(Tensor(Shape{3, 3}, 1.0), testing::random_tensor(Shape{3, 3}, rng)),
               MetricError);
}

}  // namespace
}  // namespace tae::metrics
