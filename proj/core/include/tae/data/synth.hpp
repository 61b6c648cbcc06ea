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

#pragma once

#include <cstddef>
#include <cstdint>

#include "tae/data/dataset.hpp"

namespace tae::data {

struct SynthOptions {
  std::size_t classes = 4;
  std::size_t size = 8;
  double noise_sigma = 0.05;
};

// Desk-scale stand-in for MNIST: single-channel size x size images of four
// shape classes (0 horizontal bar, 1 vertical bar, 2 diagonal, 3 centered
// blob) with random placement and Gaussian pixel jitter, clamped to [0,1].
// Classes are balanced (sample i has class i % classes) and interleaved.
Dataset synth_shapes(std::size_t n, std::uint64_t seed, const SynthOptions& options = {});

}  // namespace tae::data
