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

#include <cstdint>
#include <vector>

#include "tae/crypto/rc4.hpp"

namespace {

void BM_Rc4Apply(benchmark::State& state) {
  const std::vector<std::uint8_t> msg(static_cast<std::size_t>(state.range(0)), 0x5a);
  for (auto _ : state) {
    tae::crypto::Rc4State s("archnet-baseline");
    benchmark::DoNotOptimize(tae::crypto::rc4_apply(s, msg));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * msg.size()));
}
BENCHMARK(BM_Rc4Apply)->Range(64, 1 << 20);

}  // namespace
