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

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "tae/io/binary.hpp"
#include "tae/tensor/tensor.hpp"

namespace tae::metrics {

// Three channels of a C×H×W sample as an RGB image (H rows, W columns).
// Each channel is min-max stretched to 0..255 independently; a constant
// channel becomes mid-gray (128). Throws ShapeError for an index >= C.
io::Bytes render_channels_png(const Tensor& sample, std::array<std::size_t, 3> channels);
void visualize_channels(const Tensor& sample, std::array<std::size_t, 3> channels,
                        const std::filesystem::path& out);

// Line chart of one or more curves on a white canvas, y autoscaled over
// all finite values. Curves are drawn in a fixed color order.
io::Bytes render_curves_png(std::span<const std::vector<double>> curves, std::size_t width = 320,
                            std::size_t height = 200);

}  // namespace tae::metrics
