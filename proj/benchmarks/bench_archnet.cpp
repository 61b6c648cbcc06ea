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

#include "tae/archnet/archnet.hpp"
#include "tae/data/synth.hpp"

namespace {

void BM_DeskEncrypt(benchmark::State& state) {
  const auto net = tae::archnet::build_archnet(tae::archnet::desk_config(), 1);
  const auto data = tae::data::synth_shapes(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(tae::archnet::encrypt_dataset(net, data));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DeskEncrypt)->Arg(32)->Arg(256);

void BM_DeskTrainEpoch(benchmark::State& state) {
  auto net = tae::archnet::build_archnet(tae::archnet::desk_config(), 1);
  const auto data = tae::data::synth_shapes(static_cast<std::size_t>(state.range(0)), 1);
  tae::archnet::TrainOptions opts;
  opts.epochs = 1;
  opts.adam.lr = 1e-3;
  for (auto _ : state) tae::archnet::train_identity(net, data, opts);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DeskTrainEpoch)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
