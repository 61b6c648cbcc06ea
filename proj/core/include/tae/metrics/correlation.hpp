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

#include "tae/tensor/tensor.hpp"

namespace tae::metrics {

// Bilinear (align-corners) resampling of an H×W image to h×w.
Tensor resample_bilinear(const Tensor& image, std::size_t h, std::size_t w);

// Pearson r between two H×W images. When extents differ the larger one is
// resampled to the smaller. Throws MetricError if either is constant or
// non-finite.
double pixel_correlation(const Tensor& original, const Tensor& encrypted_channel);

}  // namespace tae::metrics
