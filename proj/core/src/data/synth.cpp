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

#include "tae/data/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "tae/error.hpp"

namespace tae::data {

Dataset synth_shapes(std::size_t n, std::uint64_t seed, const SynthOptions& options) {
  const std::size_t classes = options.classes;
  const std::size_t s = options.size;
  if (classes < 1 || classes > 4) throw ConfigError("synth_shapes supports 1..4 classes");
  if (s < 4) throw ConfigError("synth_shapes needs images of at least 4x4");
  if (n < classes) throw ConfigError("synth_shapes needs n >= classes");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> jitter(0.0, options.noise_sigma);
  std::uniform_int_distribution<std::size_t> line(1, s - 2);
  std::uniform_int_distribution<int> shift(-1, 1);
  std::uniform_int_distribution<int> flip(0, 1);

  Dataset d;
  d.name = "synth";
  d.num_classes = classes;
  d.images = Tensor(Shape{n, 1, s, s});
  d.labels.resize(n);
  const double centre = (static_cast<double>(s) - 1.0) / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % classes);
    d.labels[i] = label;
    double* img = d.images.data().data() + i * s * s;
    switch (label) {
      case 0: {
        const std::size_t r = line(rng);
        for (std::size_t c = 0; c < s; ++c) img[r * s + c] = 1.0;
        break;
      }
      case 1: {
        const std::size_t c = line(rng);
        for (std::size_t r = 0; r < s; ++r) img[r * s + c] = 1.0;
        break;
      }
      case 2: {
        const bool anti = flip(rng) == 1;
        const int offset = shift(rng);
        for (std::size_t r = 0; r < s; ++r) {
          const auto c = static_cast<std::ptrdiff_t>(anti ? s - 1 - r : r) + offset;
          if (c >= 0 && c < static_cast<std::ptrdiff_t>(s)) img[r * s + static_cast<std::size_t>(c)] = 1.0;
        }
        break;
      }
      default: {
        const double cy = centre + shift(rng) * 0.5;
        const double cx = centre + shift(rng) * 0.5;
        const double radius = static_cast<double>(s) / 5.0;
        for (std::size_t r = 0; r < s; ++r)
          for (std::size_t c = 0; c < s; ++c) {
            const double dy = static_cast<double>(r) - cy, dx = static_cast<double>(c) - cx;
            img[r * s + c] = std::exp(-(dy * dy + dx * dx) / (2.0 * radius * radius));
          }
        break;
      }
    }
    for (std::size_t k = 0; k < s * s; ++k) img[k] = std::clamp(img[k] + jitter(rng), 0.0, 1.0);
  }
  return d;
}

}  // namespace tae::data
