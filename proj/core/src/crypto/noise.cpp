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

#include "tae/crypto/noise.hpp"

#include <algorithm>
#include <random>

#include "tae/error.hpp"

namespace tae::crypto {

data::Dataset noise_baseline(const data::Dataset& d, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ConfigError("noise sigma must be >= 0");
  data::Dataset out = d;
  out.encoding = "noise";
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (auto& v : out.images.data()) v = std::clamp(v + noise(rng), 0.0, 1.0);
  return out;
}

}  // namespace tae::crypto
