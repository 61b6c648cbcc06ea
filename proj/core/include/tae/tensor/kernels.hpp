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
#include <vector>

#include "tae/tensor/tensor.hpp"

// Raw forward/backward kernels behind the autodiff ops. Backward kernels
// accumulate (+=) into the gradient tensors they are handed; a null pointer
// skips that gradient.
namespace tae::kernels {

// Output extent of a strided, zero-padded window sweep.
std::size_t conv_out_extent(std::size_t in, std::size_t kernel, std::size_t stride,
                            std::size_t padding);

// x: [N,Cin,H,W], w: [Cout,Cin,kh,kw], b: [Cout]. Cross-correlation.
Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, std::size_t stride,
              std::size_t padding);
void conv2d_backward(const Tensor& x, const Tensor& w, const Tensor& grad_out,
                     std::size_t stride, std::size_t padding, Tensor* grad_x,
                     Tensor* grad_w, Tensor* grad_b);

// x: [N,Cin,H,W], w: [Cin,Cout,kh,kw], b: [Cout]. Output extent (H-1)*stride+kh.
Tensor conv_transpose2d(const Tensor& x, const Tensor& w, const Tensor& b,
                        std::size_t stride);
void conv_transpose2d_backward(const Tensor& x, const Tensor& w, const Tensor& grad_out,
                               std::size_t stride, Tensor* grad_x, Tensor* grad_w,
                               Tensor* grad_b);

// x: [N,Din], w: [Dout,Din], b: [Dout].
Tensor linear(const Tensor& x, const Tensor& w, const Tensor& b);
void linear_backward(const Tensor& x, const Tensor& w, const Tensor& grad_out,
                     Tensor* grad_x, Tensor* grad_w, Tensor* grad_b);

// Records the flat input index of every window maximum in `argmax`.
Tensor maxpool2d(const Tensor& x, std::size_t kernel, std::size_t stride,
                 std::vector<std::size_t>* argmax);

}  // namespace tae::kernels
