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

#include "oracles.hpp"
#include "tae/error.hpp"
#include "tae/tensor/kernels.hpp"

namespace tae {
namespace {

using testing::conv2d_oracle;
using testing::conv_transpose2d_oracle;
using testing::matmul_oracle;
using testing::max_abs_diff;
using testing::random_tensor;

TEST(Conv2d, UnitKernelIsIdentity) {
  const Tensor x = Tensor::from({1, 1, 3, 3}, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const Tensor y = kernels::conv2d(x, Tensor::from({1, 1, 1, 1}, {1}), Tensor::from({1}, {0}), 1, 0);
  EXPECT_EQ(y, x);
}

TEST(Conv2d, OnesKernelSumsWindows) {
  const Tensor y = kernels::conv2d(Tensor({1, 1, 3, 3}, 1.0), Tensor({1, 1, 2, 2}, 1.0), Tensor({1}, 0.0), 1, 0);
  ASSERT_EQ(y.shape(), (Shape{1, 1, 2, 2}));
  for (double v : y.data()) EXPECT_EQ(v, 4.0);
}

TEST(Conv2d, MatchesNestedLoopOracle) {
  std::mt19937_64 rng(11);
  const Tensor x = random_tensor({2, 3, 8, 8}, rng);
  const Tensor w = random_tensor({5, 3, 3, 3}, rng);
  const Tensor b = random_tensor({5}, rng);
  EXPECT_LT(max_abs_diff(kernels::conv2d(x, w, b, 1, 1), conv2d_oracle(x, w, b, 1, 1)), 1e-12);
}

TEST(Conv2d, OracleAgreementOverRandomGeometries) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> ext(1, 7), ch(1, 4), k(1, 4), s(1, 3), p(0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t h = ext(rng), w = ext(rng), kh = k(rng), kw = k(rng), stride = s(rng), pad = p(rng);
    if (kh > h + 2 * pad || kw > w + 2 * pad) continue;
    const std::size_t cin = ch(rng), cout = ch(rng), n = ch(rng);
    const Tensor x = random_tensor({n, cin, h, w}, rng);
    const Tensor wt = random_tensor({cout, cin, kh, kw}, rng);
    const Tensor b = random_tensor({cout}, rng);
    const Tensor y = kernels::conv2d(x, wt, b, stride, pad);
    // Shape law.
    ASSERT_EQ(y.shape(), (Shape{n, cout, (h + 2 * pad - kh) / stride + 1, (w + 2 * pad - kw) / stride + 1}));
    EXPECT_LT(max_abs_diff(y, conv2d_oracle(x, wt, b, stride, pad)), 1e-12) << "trial " << trial;
  }
}

TEST(Conv2d, ShapeErrorNamesTheDimension) {
  const Tensor x({1, 2, 4, 4});
  try {
    kernels::conv2d(x, Tensor({3, 5, 3, 3}), Tensor({3}), 1, 1);
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    EXPECT_NE(std::string(e.what()).find("channels"), std::string::npos) << e.what();
  }
  EXPECT_THROW(kernels::conv2d(x, Tensor({3, 2, 7, 7}), Tensor({3}), 1, 1), ShapeError);
  EXPECT_THROW(kernels::conv2d(x, Tensor({3, 2, 3, 3}), Tensor({4}), 1, 1), ShapeError);
  EXPECT_THROW(kernels::conv2d(x, Tensor({3, 2, 3, 3}), Tensor({3}), 0, 1), ShapeError);
}

TEST(ConvTranspose2d, SinglePixelExpandsToBlock) {
  const Tensor y = kernels::conv_transpose2d(Tensor::from({1, 1, 1, 1}, {2.5}), Tensor({1, 1, 2, 2}, 1.0),
                                             Tensor({1}, 0.0), 2);
  ASSERT_EQ(y.shape(), (Shape{1, 1, 2, 2}));
  for (double v : y.data()) EXPECT_EQ(v, 2.5);
}

TEST(ConvTranspose2d, DoublesSpatialExtent) {
  const Tensor y = kernels::conv_transpose2d(Tensor({1, 1, 28, 28}, 0.5), Tensor({1, 3, 2, 2}, 0.1),
                                             Tensor({3}, 0.0), 2);
  EXPECT_EQ(y.shape(), (Shape{1, 3, 56, 56}));
}

TEST(ConvTranspose2d, MatchesScatterOracle) {
  std::mt19937_64 rng(13);
  for (std::size_t stride : {1, 2, 3}) {
    const Tensor x = random_tensor({2, 3, 5, 4}, rng);
    const Tensor w = random_tensor({3, 2, 3, 2}, rng);
    const Tensor b = random_tensor({2}, rng);
    EXPECT_LT(max_abs_diff(kernels::conv_transpose2d(x, w, b, stride), conv_transpose2d_oracle(x, w, b, stride)),
              1e-12);
  }
}

// conv_transpose2d(y, w) must equal d<conv2d(x, w), y>/dx.
TEST(ConvTranspose2d, IsAdjointOfConvolution) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Tensor x = random_tensor({1, 2, 4, 4}, rng);
    const Tensor w = random_tensor({3, 2, 2, 2}, rng);
    const Tensor y = random_tensor({1, 3, 2, 2}, rng);
    Tensor gx(x.shape());
    kernels::conv2d_backward(x, w, y, 2, 0, &gx, nullptr, nullptr);
    const Tensor t = kernels::conv_transpose2d(y, w, Tensor({2}, 0.0), 2);
    EXPECT_LT(max_abs_diff(t, gx), 1e-10);
  }
}

TEST(Linear, IdentityWeight) {
  const Tensor x = Tensor::from({2, 3}, {1, 2, 3, 4, 5, 6});
  Tensor eye({3, 3});
  for (std::size_t i = 0; i < 3; ++i) eye[i * 3 + i] = 1.0;
  EXPECT_EQ(kernels::linear(x, eye, Tensor({3})), x);
}

TEST(Linear, HandArithmetic) {
  const Tensor y = kernels::linear(Tensor::from({1, 2}, {1, 2}), Tensor::from({2, 2}, {1, 1, 0, 1}),
                                   Tensor::from({2}, {1, 0}));
  EXPECT_EQ(y, Tensor::from({1, 2}, {4, 2}));
}

TEST(Linear, MatchesTripleLoop) {
  std::mt19937_64 rng(15);
  const Tensor x = random_tensor({4, 10}, rng);
  const Tensor w = random_tensor({7, 10}, rng);
  const Tensor b = random_tensor({7}, rng);
  EXPECT_LT(max_abs_diff(kernels::linear(x, w, b), matmul_oracle(x, w, b)), 1e-12);
}

TEST(Linear, InnerDimensionMismatch) {
  EXPECT_THROW(kernels::linear(Tensor({2, 3}), Tensor({4, 5}), Tensor({4})), ShapeError);
}

TEST(MaxPool, WindowMax) {
  std::vector<std::size_t> argmax;
  const Tensor y = kernels::maxpool2d(Tensor::from({1, 1, 2, 2}, {1, 2, 3, 4}), 2, 2, &argmax);
  EXPECT_EQ(y, Tensor::from({1, 1, 1, 1}, {4}));
  ASSERT_EQ(argmax.size(), 1u);
  EXPECT_EQ(argmax[0], 3u);
}

TEST(MaxPool, OutputExtentFormula) {
  const Tensor y = kernels::maxpool2d(Tensor({2, 3, 7, 5}, 1.0), 2, 2, nullptr);
  EXPECT_EQ(y.shape(), (Shape{2, 3, 3, 2}));
}

}  // namespace
}  // namespace tae
