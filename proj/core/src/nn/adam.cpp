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

#include "tae/nn/adam.hpp"

#include <cmath>

#include "tae/error.hpp"

namespace tae::nn {

void adam_step(std::span<Parameter* const> params, AdamState& state) {
  if (state.m_.empty()) {
    for (auto* p : params) {
      state.m_.emplace_back(p->value.shape());
      state.v_.emplace_back(p->value.shape());
    }
  }
  if (state.m_.size() != params.size()) {
    throw ShapeError("adam_step: state tracks " + std::to_string(state.m_.size()) +
                     " parameters, got " + std::to_string(params.size()));
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    const auto& shape = params[k]->value.shape();
    if (params[k]->grad.shape() != shape || state.m_[k].shape() != shape) {
      throw ShapeError("adam_step: parameter " + std::to_string(k) + " shape " + shape_str(shape) +
                       " does not match its gradient " + shape_str(params[k]->grad.shape()) +
                       " or moment " + shape_str(state.m_[k].shape()));
    }
  }

  const auto& o = state.options_;
  ++state.t_;
  const double t = static_cast<double>(state.t_);
  const double c1 = 1.0 - std::pow(o.beta1, t);
  const double c2 = 1.0 - std::pow(o.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto w = params[k]->value.data();
    auto g = params[k]->grad.data();
    auto m = state.m_[k].data();
    auto v = state.v_[k].data();
    for (std::size_t i = 0; i < w.size(); ++i) {
      m[i] = o.beta1 * m[i] + (1.0 - o.beta1) * g[i];
      v[i] = o.beta2 * v[i] + (1.0 - o.beta2) * g[i] * g[i];
      w[i] -= o.lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + o.eps);
    }
  }
}

}  // namespace tae::nn
