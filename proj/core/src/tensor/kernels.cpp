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

#include "tae/tensor/kernels.hpp"

#include <Eigen/Core>
#include <limits>
#include <string>

#include "tae/error.hpp"

namespace tae::kernels {
namespace {

using MatR = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapR = Eigen::Map<MatR>;
using CMapR = Eigen::Map<const MatR>;
using CVec = Eigen::Map<const Eigen::VectorXd>;
using Vec = Eigen::Map<Eigen::VectorXd>;

struct Geometry {
  std::size_t n, c, h, w;     // image
  std::size_t kh, kw;         // window
  std::size_t stride, pad;
  std::size_t ho, wo;         // window grid
  std::size_t rows() const { return c * kh * kw; }
  std::size_t cols() const { return n * ho * wo; }
};

// cols(row = (c*kh+i)*kw+j, col = n*ho*wo + oh*wo + ow) = x[n,c,oh*s+i-pad,ow*s+j-pad]
MatR im2col(std::span<const double> x, const Geometry& g) {
  MatR cols(g.rows(), g.cols());
  const std::size_t plane = g.ho * g.wo;
  for (std::size_t c = 0; c < g.c; ++c) {
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        double* row = cols.row(static_cast<Eigen::Index>((c * g.kh + i) * g.kw + j)).data();
        for (std::size_t n = 0; n < g.n; ++n) {
          const double* src = x.data() + (n * g.c + c) * g.h * g.w;
          double* dst = row + n * plane;
          for (std::size_t oh = 0; oh < g.ho; ++oh) {
            const auto ih = static_cast<std::ptrdiff_t>(oh * g.stride + i) -
                            static_cast<std::ptrdiff_t>(g.pad);
            if (ih < 0 || ih >= static_cast<std::ptrdiff_t>(g.h)) {
              for (std::size_t ow = 0; ow < g.wo; ++ow) dst[oh * g.wo + ow] = 0.0;
              continue;
            }
            for (std::size_t ow = 0; ow < g.wo; ++ow) {
              const auto iw = static_cast<std::ptrdiff_t>(ow * g.stride + j) -
                              static_cast<std::ptrdiff_t>(g.pad);
              dst[oh * g.wo + ow] = (iw < 0 || iw >= static_cast<std::ptrdiff_t>(g.w))
                                        ? 0.0
                                        : src[static_cast<std::size_t>(ih) * g.w +
                                              static_cast<std::size_t>(iw)];
            }
          }
        }
      }
    }
  }
  return cols;
}

// Adjoint of im2col: scatter-add columns back into an image buffer.
void col2im(const MatR& cols, const Geometry& g, std::span<double> x) {
  const std::size_t plane = g.ho * g.wo;
  for (std::size_t c = 0; c < g.c; ++c) {
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        const double* row = cols.row(static_cast<Eigen::Index>((c * g.kh + i) * g.kw + j)).data();
        for (std::size_t n = 0; n < g.n; ++n) {
          double* dst = x.data() + (n * g.c + c) * g.h * g.w;
          const double* src = row + n * plane;
          for (std::size_t oh = 0; oh < g.ho; ++oh) {
            const auto ih = static_cast<std::ptrdiff_t>(oh * g.stride + i) -
                            static_cast<std::ptrdiff_t>(g.pad);
            if (ih < 0 || ih >= static_cast<std::ptrdiff_t>(g.h)) continue;
            for (std::size_t ow = 0; ow < g.wo; ++ow) {
              const auto iw = static_cast<std::ptrdiff_t>(ow * g.stride + j) -
                              static_cast<std::ptrdiff_t>(g.pad);
              if (iw < 0 || iw >= static_cast<std::ptrdiff_t>(g.w)) continue;
              dst[static_cast<std::size_t>(ih) * g.w + static_cast<std::size_t>(iw)] +=
                  src[oh * g.wo + ow];
            }
          }
        }
      }
    }
  }
}

// [N, C, P] tensor <-> [C, N*P] matrix.
MatR channels_major(std::span<const double> t, std::size_t n, std::size_t c, std::size_t p) {
  MatR m(c, n * p);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t ch = 0; ch < c; ++ch)
      for (std::size_t k = 0; k < p; ++k)
        m(static_cast<Eigen::Index>(ch), static_cast<Eigen::Index>(b * p + k)) =
            t[(b * c + ch) * p + k];
  return m;
}

void add_batch_major(const MatR& m, std::size_t n, std::size_t c, std::size_t p,
                     std::span<double> t) {
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t ch = 0; ch < c; ++ch)
      for (std::size_t k = 0; k < p; ++k)
        t[(b * c + ch) * p + k] +=
            m(static_cast<Eigen::Index>(ch), static_cast<Eigen::Index>(b * p + k));
}

void require_rank(const Tensor& t, std::size_t rank, const char* what) {
  if (t.rank() != rank) {
    throw ShapeError(std::string(what) + " must have rank " + std::to_string(rank) +
                     ", got shape " + shape_str(t.shape()));
  }
}

void require_dim(std::size_t got, std::size_t want, const std::string& what) {
  if (got != want) {
    throw ShapeError(what + " mismatch: expected " + std::to_string(want) + ", got " +
                     std::to_string(got));
  }
}

void require_bias(const Tensor& b, std::size_t channels) {
  require_rank(b, 1, "bias");
  require_dim(b.dim(0), channels, "bias length (output channels)");
}

}  // namespace

std::size_t conv_out_extent(std::size_t in, std::size_t kernel, std::size_t stride,
                            std::size_t padding) {
  if (stride == 0) throw ShapeError("stride must be >= 1");
  if (kernel == 0 || kernel > in + 2 * padding) {
    throw ShapeError("kernel extent " + std::to_string(kernel) +
                     " exceeds padded input extent " + std::to_string(in + 2 * padding));
  }
  return (in + 2 * padding - kernel) / stride + 1;
}

Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, std::size_t stride,
              std::size_t padding) {
  require_rank(x, 4, "conv2d input");
  require_rank(w, 4, "conv2d kernel");
  require_dim(w.dim(1), x.dim(1), "conv2d input channels (dim 1)");
  require_bias(b, w.dim(0));
  Geometry g{x.dim(0), x.dim(1), x.dim(2), x.dim(3), w.dim(2), w.dim(3), stride, padding, 0, 0};
  g.ho = conv_out_extent(g.h, g.kh, stride, padding);
  g.wo = conv_out_extent(g.w, g.kw, stride, padding);
  const std::size_t cout = w.dim(0);
  const std::size_t plane = g.ho * g.wo;

  const MatR cols = im2col(x.data(), g);
  const CMapR kernel(w.data().data(), static_cast<Eigen::Index>(cout),
                     static_cast<Eigen::Index>(g.rows()));
  const MatR y = kernel * cols;

  Tensor out({g.n, cout, g.ho, g.wo});
  auto o = out.data();
  for (std::size_t n = 0; n < g.n; ++n)
    for (std::size_t co = 0; co < cout; ++co)
      for (std::size_t k = 0; k < plane; ++k)
        o[(n * cout + co) * plane + k] =
            y(static_cast<Eigen::Index>(co), static_cast<Eigen::Index>(n * plane + k)) + b[co];
  return out;
}

void conv2d_backward(const Tensor& x, const Tensor& w, const Tensor& grad_out,
                     std::size_t stride, std::size_t padding, Tensor* grad_x,
                     Tensor* grad_w, Tensor* grad_b) {
  Geometry g{x.dim(0), x.dim(1), x.dim(2), x.dim(3), w.dim(2), w.dim(3), stride, padding, 0, 0};
  g.ho = conv_out_extent(g.h, g.kh, stride, padding);
  g.wo = conv_out_extent(g.w, g.kw, stride, padding);
  const std::size_t cout = w.dim(0);
  const std::size_t plane = g.ho * g.wo;
  const MatR gy = channels_major(grad_out.data(), g.n, cout, plane);

  if (grad_b) {
    Vec(grad_b->data().data(), static_cast<Eigen::Index>(cout)) += gy.rowwise().sum();
  }
  if (grad_w) {
    const MatR cols = im2col(x.data(), g);
    MapR(grad_w->data().data(), static_cast<Eigen::Index>(cout),
         static_cast<Eigen::Index>(g.rows())).noalias() += gy * cols.transpose();
  }
  if (grad_x) {
    const CMapR kernel(w.data().data(), static_cast<Eigen::Index>(cout),
                       static_cast<Eigen::Index>(g.rows()));
    const MatR gcols = kernel.transpose() * gy;
    col2im(gcols, g, grad_x->data());
  }
}

// A transposed convolution is the adjoint of a stride-s, pad-0 convolution
// whose input is the (larger) transposed-convolution output.
Tensor conv_transpose2d(const Tensor& x, const Tensor& w, const Tensor& b,
                        std::size_t stride) {
  require_rank(x, 4, "conv_transpose2d input");
  require_rank(w, 4, "conv_transpose2d kernel");
  require_dim(w.dim(0), x.dim(1), "conv_transpose2d input channels (dim 1)");
  if (stride == 0) throw ShapeError("stride must be >= 1");
  const std::size_t cout = w.dim(1);
  require_bias(b, cout);
  const std::size_t n = x.dim(0), cin = x.dim(1), h = x.dim(2), wd = x.dim(3);
  const std::size_t kh = w.dim(2), kw = w.dim(3);
  if (h == 0 || wd == 0) throw ShapeError("conv_transpose2d input has an empty spatial extent");
  const std::size_t ho = (h - 1) * stride + kh;
  const std::size_t wo = (wd - 1) * stride + kw;
  Geometry g{n, cout, ho, wo, kh, kw, stride, 0, h, wd};

  const MatR xm = channels_major(x.data(), n, cin, h * wd);
  const CMapR kernel(w.data().data(), static_cast<Eigen::Index>(cin),
                     static_cast<Eigen::Index>(g.rows()));
  const MatR cols = kernel.transpose() * xm;

  Tensor out({n, cout, ho, wo});
  col2im(cols, g, out.data());
  auto o = out.data();
  const std::size_t plane = ho * wo;
  for (std::size_t bn = 0; bn < n; ++bn)
    for (std::size_t co = 0; co < cout; ++co)
      for (std::size_t k = 0; k < plane; ++k) o[(bn * cout + co) * plane + k] += b[co];
  return out;
}

void conv_transpose2d_backward(const Tensor& x, const Tensor& w, const Tensor& grad_out,
                               std::size_t stride, Tensor* grad_x, Tensor* grad_w,
                               Tensor* grad_b) {
  const std::size_t n = x.dim(0), cin = x.dim(1), h = x.dim(2), wd = x.dim(3);
  const std::size_t cout = w.dim(1), kh = w.dim(2), kw = w.dim(3);
  const std::size_t ho = (h - 1) * stride + kh;
  const std::size_t wo = (wd - 1) * stride + kw;
  Geometry g{n, cout, ho, wo, kh, kw, stride, 0, h, wd};

  if (grad_b) {
    auto gb = grad_b->data();
    auto go = grad_out.data();
    const std::size_t plane = ho * wo;
    for (std::size_t bn = 0; bn < n; ++bn)
      for (std::size_t co = 0; co < cout; ++co) {
        double s = 0.0;
        for (std::size_t k = 0; k < plane; ++k) s += go[(bn * cout + co) * plane + k];
        gb[co] += s;
      }
  }
  if (!grad_x && !grad_w) return;
  const MatR gcols = im2col(grad_out.data(), g);
  if (grad_w) {
    const MatR xm = channels_major(x.data(), n, cin, h * wd);
    MapR(grad_w->data().data(), static_cast<Eigen::Index>(cin),
         static_cast<Eigen::Index>(g.rows())).noalias() += xm * gcols.transpose();
  }
  if (grad_x) {
    const CMapR kernel(w.data().data(), static_cast<Eigen::Index>(cin),
                       static_cast<Eigen::Index>(g.rows()));
    const MatR gx = kernel * gcols;
    add_batch_major(gx, n, cin, h * wd, grad_x->data());
  }
}

Tensor linear(const Tensor& x, const Tensor& w, const Tensor& b) {
  require_rank(x, 2, "linear input");
  require_rank(w, 2, "linear weight");
  require_dim(w.dim(1), x.dim(1), "linear input features (dim 1)");
  require_bias(b, w.dim(0));
  const auto n = static_cast<Eigen::Index>(x.dim(0));
  const auto din = static_cast<Eigen::Index>(x.dim(1));
  const auto dout = static_cast<Eigen::Index>(w.dim(0));
  Tensor out({x.dim(0), w.dim(0)});
  MapR y(out.data().data(), n, dout);
  y.noalias() = CMapR(x.data().data(), n, din) * CMapR(w.data().data(), dout, din).transpose();
  y.rowwise() += CVec(b.data().data(), dout).transpose();
  return out;
}

void linear_backward(const Tensor& x, const Tensor& w, const Tensor& grad_out,
                     Tensor* grad_x, Tensor* grad_w, Tensor* grad_b) {
  const auto n = static_cast<Eigen::Index>(x.dim(0));
  const auto din = static_cast<Eigen::Index>(x.dim(1));
  const auto dout = static_cast<Eigen::Index>(w.dim(0));
  const CMapR gy(grad_out.data().data(), n, dout);
  if (grad_b) Vec(grad_b->data().data(), dout) += gy.colwise().sum().transpose();
  if (grad_w) {
    MapR(grad_w->data().data(), dout, din).noalias() +=
        gy.transpose() * CMapR(x.data().data(), n, din);
  }
  if (grad_x) {
    MapR(grad_x->data().data(), n, din).noalias() += gy * CMapR(w.data().data(), dout, din);
  }
}

Tensor maxpool2d(const Tensor& x, std::size_t kernel, std::size_t stride,
                 std::vector<std::size_t>* argmax) {
  require_rank(x, 4, "maxpool2d input");
  const std::size_t n = x.dim(0), c = x.dim(1), h = x.dim(2), w = x.dim(3);
  const std::size_t ho = conv_out_extent(h, kernel, stride, 0);
  const std::size_t wo = conv_out_extent(w, kernel, stride, 0);
  Tensor out({n, c, ho, wo});
  if (argmax) argmax->assign(out.numel(), 0);
  auto src = x.data();
  auto dst = out.data();
  std::size_t o = 0;
  for (std::size_t plane = 0; plane < n * c; ++plane) {
    const std::size_t base = plane * h * w;
    for (std::size_t oh = 0; oh < ho; ++oh) {
      for (std::size_t ow = 0; ow < wo; ++ow, ++o) {
        std::size_t best = base + oh * stride * w + ow * stride;
        for (std::size_t i = 0; i < kernel; ++i)
          for (std::size_t j = 0; j < kernel; ++j) {
            const std::size_t idx = base + (oh * stride + i) * w + ow * stride + j;
            if (src[idx] > src[best]) best = idx;
          }
        dst[o] = src[best];
        if (argmax) (*argmax)[o] = best;
      }
    }
  }
  return out;
}

}  // namespace tae::kernels
