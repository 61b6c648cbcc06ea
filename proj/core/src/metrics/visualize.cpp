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

#include "tae/metrics/visualize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tae/error.hpp"
#include "tae/io/png.hpp"

namespace tae::metrics {

io::Bytes render_channels_png(const Tensor& sample, std::array<std::size_t, 3> channels) {
  if (sample.rank() != 3) throw ShapeError("visualize: expected a C×H×W sample, got " + shape_str(sample.shape()));
  const std::size_t c = sample.dim(0), h = sample.dim(1), w = sample.dim(2);
  for (std::size_t idx : channels) {
    if (idx >= c) {
      throw ShapeError("visualize: channel " + std::to_string(idx) + " out of range for " + std::to_string(c) +
                       " channels");
    }
  }
  const std::size_t plane = h * w;
  io::Bytes rgb(plane * 3);
  for (std::size_t k = 0; k < 3; ++k) {
    auto values = sample.data().subspan(channels[k] * plane, plane);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    for (std::size_t p = 0; p < plane; ++p) {
      std::uint8_t byte = 128;
      if (range > 0.0) byte = static_cast<std::uint8_t>(std::lround((values[p] - *lo) / range * 255.0));
      rgb[p * 3 + k] = byte;
    }
  }
  return io::encode_png_rgb(w, h, rgb);
}

void visualize_channels(const Tensor& sample, std::array<std::size_t, 3> channels,
                        const std::filesystem::path& out) {
  io::write_file(out, render_channels_png(sample, channels));
}

namespace {

constexpr std::array<std::array<std::uint8_t, 3>, 4> kPalette{{{31, 119, 180}, {214, 39, 40}, {44, 160, 44}, {148, 103, 189}}};

void plot(io::Bytes& rgb, std::size_t width, std::size_t height, long x, long y, const std::array<std::uint8_t, 3>& col) {
  if (x < 0 || y < 0 || x >= static_cast<long>(width) || y >= static_cast<long>(height)) return;
  auto* px = &rgb[(static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x)) * 3];
  px[0] = col[0];
  px[1] = col[1];
  px[2] = col[2];
}

}  // namespace

io::Bytes render_curves_png(std::span<const std::vector<double>> curves, std::size_t width, std::size_t height) {
  if (width < 16 || height < 16) throw ConfigError("curve image must be at least 16x16");
  io::Bytes rgb(width * height * 3, 255);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t longest = 0;
  for (const auto& c : curves) {
    longest = std::max(longest, c.size());
    for (double v : c) {
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  const long margin = 8;
  const long pw = static_cast<long>(width) - 2 * margin, ph = static_cast<long>(height) - 2 * margin;
  // Axes.
  for (long x = margin; x <= margin + pw; ++x) plot(rgb, width, height, x, margin + ph, {0, 0, 0});
  for (long y = margin; y <= margin + ph; ++y) plot(rgb, width, height, margin, y, {0, 0, 0});
  if (longest == 0 || !std::isfinite(lo)) return io::encode_png_rgb(width, height, rgb);
  if (hi == lo) {
    hi += 0.5;
    lo -= 0.5;
  }
  auto to_px = [&](std::size_t i, double v) {
    const double fx = longest > 1 ? static_cast<double>(i) / static_cast<double>(longest - 1) : 0.5;
    const double fy = (v - lo) / (hi - lo);
    return std::pair<double, double>{margin + fx * pw, margin + (1.0 - fy) * ph};
  };
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& col = kPalette[k % kPalette.size()];
    const auto& c = curves[k];
    for (std::size_t i = 0; i + 1 < c.size() || (c.size() == 1 && i == 0); ++i) {
      if (c.size() == 1) {
        auto [x, y] = to_px(0, c[0]);
        plot(rgb, width, height, std::lround(x), std::lround(y), col);
        break;
      }
      if (!std::isfinite(c[i]) || !std::isfinite(c[i + 1])) continue;
      auto [x0, y0] = to_px(i, c[i]);
      auto [x1, y1] = to_px(i + 1, c[i + 1]);
      const int steps = static_cast<int>(std::max({std::abs(x1 - x0), std::abs(y1 - y0), 1.0}) * 2);
      for (int s = 0; s <= steps; ++s) {
        const double t = static_cast<double>(s) / steps;
        plot(rgb, width, height, std::lround(x0 + t * (x1 - x0)), std::lround(y0 + t * (y1 - y0)), col);
      }
    }
  }
  return io::encode_png_rgb(width, height, rgb);
}

}  // namespace tae::metrics
