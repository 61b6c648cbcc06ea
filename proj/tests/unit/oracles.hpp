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

// Reference implementations used only as test oracles. Written as plain
// nested loops over the textbook definitions, sharing nothing with the
// production kernels.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "tae/tensor/tensor.hpp"

namespace tae::testing {

inline Tensor random_tensor(const Shape& shape, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor t(shape);
  for (auto& v : t.data()) v = u(rng);
  return t;
}

// Direct cross-correlation with zero padding.
inline Tensor conv2d_oracle(const Tensor& x, const Tensor& w, const Tensor& b, std::size_t stride,
                            std::size_t pad) {
  const std::size_t n = x.dim(0), cin = x.dim(1), h = x.dim(2), wd = x.dim(3);
  const std::size_t cout = w.dim(0), kh = w.dim(2), kw = w.dim(3);
  const std::size_t ho = (h + 2 * pad - kh) / stride + 1, wo = (wd + 2 * pad - kw) / stride + 1;
  Tensor y(Shape{n, cout, ho, wo});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t o = 0; o < cout; ++o)
      for (std::size_t r = 0; r < ho; ++r)
        for (std::size_t c = 0; c < wo; ++c) {
          double acc = b[o];
          for (std::size_t ci = 0; ci < cin; ++ci)
            for (std::size_t u = 0; u < kh; ++u)
              for (std::size_t v = 0; v < kw; ++v) {
                const long yy = static_cast<long>(r * stride + u) - static_cast<long>(pad);
                const long xx = static_cast<long>(c * stride + v) - static_cast<long>(pad);
                if (yy < 0 || xx < 0 || yy >= static_cast<long>(h) || xx >= static_cast<long>(wd)) continue;
                acc += x.at(i, ci, static_cast<std::size_t>(yy), static_cast<std::size_t>(xx)) * w.at(o, ci, u, v);
              }
          y.at(i, o, r, c) = acc;
        }
  return y;
}

// Scatter definition: every input pixel stamps the kernel into the output.
inline Tensor conv_transpose2d_oracle(const Tensor& x, const Tensor& w, const Tensor& b, std::size_t stride) {
  const std::size_t n = x.dim(0), cin = x.dim(1), h = x.dim(2), wd = x.dim(3);
  const std::size_t cout = w.dim(1), kh = w.dim(2), kw = w.dim(3);
  const std::size_t ho = (h - 1) * stride + kh, wo = (wd - 1) * stride + kw;
  Tensor y(Shape{n, cout, ho, wo});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t o = 0; o < cout; ++o)
      for (std::size_t r = 0; r < ho; ++r)
        for (std::size_t c = 0; c < wo; ++c) y.at(i, o, r, c) = b[o];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t ci = 0; ci < cin; ++ci)
      for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < wd; ++c)
          for (std::size_t o = 0; o < cout; ++o)
            for (std::size_t u = 0; u < kh; ++u)
              for (std::size_t v = 0; v < kw; ++v)
                y.at(i, o, r * stride + u, c * stride + v) += x.at(i, ci, r, c) * w.at(ci, o, u, v);
  return y;
}

inline Tensor matmul_oracle(const Tensor& x, const Tensor& w, const Tensor& b) {
  const std::size_t n = x.dim(0), din = x.dim(1), dout = w.dim(0);
  Tensor y(Shape{n, dout});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dout; ++j) {
      double acc = b[j];
      for (std::size_t k = 0; k < din; ++k) acc += x[i * din + k] * w[j * din + k];
      y[i * dout + j] = acc;
    }
  return y;
}

inline double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) return 1e300;
  double m = 0.0;
  for (std::size_t i = 0; i < a.numel(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("tae-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace tae::testing
