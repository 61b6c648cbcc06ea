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

#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "tae/tensor/kernels.hpp"

namespace {

using tae::Shape;
using tae::bench::random_tensor;

// Args: batch, channels, spatial extent. 3x3 kernel, same padding.
void BM_Conv2dForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = static_cast<std::size_t>(state.range(1));
  const auto hw = static_cast<std::size_t>(state.range(2));
  const auto x = random_tensor({n, c, hw, hw}, 1);
  const auto w = random_tensor({c, c, 3, 3}, 2);
  const auto b = random_tensor({c}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(tae::kernels::conv2d(x, w, b, 1, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * c * c * hw * hw * 9));
}
BENCHMARK(BM_Conv2dForward)->Args({32, 4, 8})->Args({8, 10, 28})->Args({1, 20, 56});

void BM_Conv2dBackward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = static_cast<std::size_t>(state.range(1));
  const auto hw = static_cast<std::size_t>(state.range(2));
  const auto x = random_tensor({n, c, hw, hw}, 1);
  const auto w = random_tensor({c, c, 3, 3}, 2);
  const auto g = random_tensor({n, c, hw, hw}, 3);
  for (auto _ : state) {
    tae::Tensor gx(x.shape()), gw(w.shape()), gb(Shape{c});
    tae::kernels::conv2d_backward(x, w, g, 1, 1, &gx, &gw, &gb);
    benchmark::DoNotOptimize(gx);
  }
}
BENCHMARK(BM_Conv2dBackward)->Args({32, 4, 8})->Args({8, 10, 28});

void BM_ConvTranspose2dForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = static_cast<std::size_t>(state.range(1));
  const auto hw = static_cast<std::size_t>(state.range(2));
  const auto x = random_tensor({n, c, hw, hw}, 1);
  const auto w = random_tensor({c, c, 2, 2}, 2);
  const auto b = random_tensor({c}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(tae::kernels::conv_transpose2d(x, w, b, 2));
}
BENCHMARK(BM_ConvTranspose2dForward)->Args({32, 4, 8})->Args({8, 10, 28});

// Args: batch, in features, out features.
void BM_LinearForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto din = static_cast<std::size_t>(state.range(1));
  const auto dout = static_cast<std::size_t>(state.range(2));
  const auto x = random_tensor({n, din}, 1);
  const auto w = random_tensor({dout, din}, 2);
  const auto b = random_tensor({dout}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(tae::kernels::linear(x, w, b));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * din * dout));
}
BENCHMARK(BM_LinearForward)->Args({32, 256, 512})->Args({32, 1024, 64});

void BM_LinearBackward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto din = static_cast<std::size_t>(state.range(1));
  const auto dout = static_cast<std::size_t>(state.range(2));
  const auto x = random_tensor({n, din}, 1);
  const auto w = random_tensor({dout, din}, 2);
  const auto g = random_tensor({n, dout}, 3);
  for (auto _ : state) {
    tae::Tensor gx(x.shape()), gw(w.shape()), gb(Shape{dout});
    tae::kernels::linear_backward(x, w, g, &gx, &gw, &gb);
    benchmark::DoNotOptimize(gw);
  }
}
BENCHMARK(BM_LinearBackward)->Args({32, 256, 512});

}  // namespace
