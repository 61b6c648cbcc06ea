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

#include <functional>
#include <span>
#include <vector>

#include "tae/tensor/graph.hpp"

namespace tae {

// Builds a scalar-valued composition on a fresh graph.
using ParamFn = std::function<Var(Graph&)>;
using InputFn = std::function<Var(Graph&, std::span<const Var>)>;

// Max over every parameter element of
//   |analytic - numeric| / max(1, |analytic|, |numeric|)
// with central differences of step h (h must lie in [1e-6, 1e-4]).
// A nonzero `max_per_tensor` probes only that many evenly spaced elements
// of each tensor.
double grad_check(const ParamFn& fn, std::span<Parameter* const> params, double h = 1e-5,
                  std::size_t max_per_tensor = 0);

// Same, treating each input tensor as a differentiable leaf.
double grad_check(const InputFn& fn, std::vector<Tensor> inputs, double h = 1e-5,
                  std::size_t max_per_tensor = 0);

}  // namespace tae
