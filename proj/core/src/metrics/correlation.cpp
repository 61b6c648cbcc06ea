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

#include "tae/metrics/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "tae/error.hpp"

namespace tae::metrics {

Tensor resample_bilinear(const Tensor& image, std::size_t h, std::size_t w) {
  if (image.rank() != 2) throw ShapeError("resample: expected an H×W image, got " + shape_str(image.shape()));
  const std::size_t ih = image.dim(0), iw = image.dim(1);
  if (ih == 0 || iw == 0 || h == 0 || w == 0) throw ShapeError("resample: empty extent");
  Tensor out(Shape{h, w});
  auto src = image.data();
  auto coord = [](std::size_t o, std::size_t out_n, std::size_t in_n) {
    return out_n > 1 ? static_cast<double>(o) * static_cast<double>(in_n - 1) / static_cast<double>(out_n - 1) : 0.0;
  };
  for (std::size_t y = 0; y < h; ++y) {
    const double sy = coord(y, h, ih);
    const std::size_t y0 = static_cast<std::size_t>(std::floor(sy));
    const std::size_t y1 = std::min(y0 + 1, ih - 1);
    const double fy = sy - static_cast<double>(y0);
    for (std::size_t x = 0; x < w; ++x) {
      const double sx = coord(x, w, iw);
      const std::size_t x0 = static_cast<std::size_t>(std::floor(sx));
      const std::size_t x1 = std::min(x0 + 1, iw - 1);
      const double fx = sx - static_cast<double>(x0);
      const double top = src[y0 * iw + x0] * (1 - fx) + src[y0 * iw + x1] * fx;
      const double bot = src[y1 * iw + x0] * (1 - fx) + src[y1 * iw + x1] * fx;
      out[y * w + x] = top * (1 - fy) + bot * fy;
    }
  }
  return out;
}

double pixel_correlation(const Tensor& original, const Tensor& encrypted_channel) {
  if (original.rank() != 2 || encrypted_channel.rank() != 2) {
    throw ShapeError("pixel_correlation: expected two H×W images");
  }
  if (!original.all_finite() || !encrypted_channel.all_finite()) {
    throw MetricError("pixel_correlation: non-finite input");
  }
  Tensor a = original, b = encrypted_channel;
  const std::size_t h = std::min(a.dim(0), b.dim(0)), w = std::min(a.dim(1), b.dim(1));
  if (a.dim(0) != h || a.dim(1) != w) a = resample_bilinear(a, h, w);
  if (b.dim(0) != h || b.dim(1) != w) b = resample_bilinear(b, h, w);

  const double n = static_cast<double>(a.numel());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.numel(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.numel(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw MetricError("pixel_correlation: constant input has no defined correlation");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace tae::metrics
