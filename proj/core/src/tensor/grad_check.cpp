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

#include "tae/tensor/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tae {

double grad_check(const ParamFn& fn, std::span<Parameter* const> params, double h,
                  std::size_t max_per_tensor) {
  if (!(h >= 1e-6 && h <= 1e-4)) throw std::invalid_argument("grad_check step must lie in [1e-6, 1e-4]");

  {
    Graph g;
    Var loss = fn(g);
    g.backward(loss);
  }
  std::vector<Tensor> analytic;
  analytic.reserve(params.size());
  for (auto* p : params) analytic.push_back(p->grad);

  auto evaluate = [&fn]() {
    Graph g;
    return fn(g).value().item();
  };

  double worst = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto values = params[k]->value.data();
    const std::size_t n = values.size();
    const std::size_t probes = max_per_tensor == 0 ? n : std::min(n, max_per_tensor);
    for (std::size_t j = 0; j < probes; ++j) {
      const std::size_t i = j * n / probes;
      const double saved = values[i];
      values[i] = saved + h;
      const double up = evaluate();
      values[i] = saved - h;
      const double down = evaluate();
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = analytic[k][i];
      const double scale = std::max({1.0, std::abs(a), std::abs(numeric)});
      worst = std::max(worst, std::abs(a - numeric) / scale);
    }
  }
  return worst;
}

double grad_check(const InputFn& fn, std::vector<Tensor> inputs, double h, std::size_t max_per_tensor) {
  std::vector<Parameter> holders;
  holders.reserve(inputs.size());
  for (auto& t : inputs) holders.emplace_back(std::move(t));
  std::vector<Parameter*> ptrs;
  for (auto& p : holders) ptrs.push_back(&p);

  ParamFn wrapped = [&](Graph& g) {
    std::vector<Var> vars;
    vars.reserve(ptrs.size());
    for (auto* p : ptrs) vars.push_back(g.param(*p));
    return fn(g, vars);
  };
  return grad_check(wrapped, ptrs, h, max_per_tensor);
}

}  // namespace tae
