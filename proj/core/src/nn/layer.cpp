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

#include "tae/nn/layer.hpp"

#include <sstream>

#include "tae/error.hpp"
#include "tae/tensor/kernels.hpp"

namespace tae::nn {

LayerSpec LayerSpec::conv(std::size_t in, std::size_t out, std::size_t kernel,
                          std::size_t stride, std::size_t padding) {
  return LayerSpec{LayerKind::kConv, in, out, kernel, stride, padding, {}};
}

LayerSpec LayerSpec::conv_transpose(std::size_t in, std::size_t out, std::size_t kernel,
                                    std::size_t stride) {
  return LayerSpec{LayerKind::kConvTranspose, in, out, kernel, stride, 0, {}};
}

LayerSpec LayerSpec::linear(std::size_t in, std::size_t out, Shape reshape) {
  return LayerSpec{LayerKind::kLinear, in, out, 0, 1, 0, std::move(reshape)};
}

LayerSpec LayerSpec::relu() { return LayerSpec{LayerKind::kRelu, 0, 0, 0, 1, 0, {}}; }
LayerSpec LayerSpec::sigmoid() { return LayerSpec{LayerKind::kSigmoid, 0, 0, 0, 1, 0, {}}; }

LayerSpec LayerSpec::maxpool(std::size_t kernel, std::size_t stride) {
  return LayerSpec{LayerKind::kMaxPool, 0, 0, kernel, stride, 0, {}};
}

bool LayerSpec::has_parameters() const {
  return kind == LayerKind::kConv || kind == LayerKind::kConvTranspose ||
         kind == LayerKind::kLinear;
}

std::size_t LayerSpec::fan_in() const {
  switch (kind) {
    case LayerKind::kConv:
    case LayerKind::kConvTranspose: return in * kernel * kernel;
    case LayerKind::kLinear: return in;
    default: return 0;
  }
}

Shape LayerSpec::weight_shape() const {
  switch (kind) {
    case LayerKind::kConv: return {out, in, kernel, kernel};
    case LayerKind::kConvTranspose: return {in, out, kernel, kernel};
    case LayerKind::kLinear: return {out, in};
    default: return {};
  }
}

std::size_t LayerSpec::parameter_count() const {
  return has_parameters() ? shape_numel(weight_shape()) + out : 0;
}

const char* layer_kind_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv: return "Conv2d";
    case LayerKind::kConvTranspose: return "ConvTrans2d";
    case LayerKind::kLinear: return "Linear";
    case LayerKind::kRelu: return "Relu";
    case LayerKind::kSigmoid: return "Sigmoid";
    case LayerKind::kMaxPool: return "MaxPool2d";
  }
  return "?";
}

std::string LayerSpec::describe() const {
  std::ostringstream os;
  os << layer_kind_name(kind) << '(';
  switch (kind) {
    case LayerKind::kConv:
      os << in << ',' << out << ",k=" << kernel << ",s=" << stride << ",p=" << padding;
      break;
    case LayerKind::kConvTranspose: os << in << ',' << out << ",k=" << kernel << ",s=" << stride; break;
    case LayerKind::kLinear:
      os << in << ',' << out;
      if (!reshape.empty()) os << "->" << shape_str(reshape);
      break;
    case LayerKind::kMaxPool: os << "k=" << kernel << ",s=" << stride; break;
    default: break;
  }
  os << ')';
  return os.str();
}

Shape infer_shape(const LayerSpec& spec, const Shape& in) {
  auto fail = [&](const std::string& why) -> Shape {
    throw ConfigError(spec.describe() + " cannot take input " + shape_str(in) + ": " + why);
  };
  switch (spec.kind) {
    case LayerKind::kConv:
    case LayerKind::kConvTranspose:
    case LayerKind::kMaxPool: {
      if (in.size() != 3) return fail("expected a CxHxW feature map");
      if (spec.kind != LayerKind::kMaxPool && in[0] != spec.in) {
        return fail("channel count " + std::to_string(in[0]) + " != " + std::to_string(spec.in));
      }
      if (spec.stride == 0 || spec.kernel == 0) return fail("kernel and stride must be >= 1");
      if (spec.kind == LayerKind::kConvTranspose) {
        if (in[1] == 0 || in[2] == 0) return fail("empty spatial extent");
        return {spec.out, (in[1] - 1) * spec.stride + spec.kernel,
                (in[2] - 1) * spec.stride + spec.kernel};
      }
      const std::size_t pad = spec.kind == LayerKind::kConv ? spec.padding : 0;
      if (spec.kernel > in[1] + 2 * pad || spec.kernel > in[2] + 2 * pad) {
        return fail("kernel larger than padded input");
      }
      const std::size_t c = spec.kind == LayerKind::kConv ? spec.out : in[0];
      return {c, kernels::conv_out_extent(in[1], spec.kernel, spec.stride, pad),
              kernels::conv_out_extent(in[2], spec.kernel, spec.stride, pad)};
    }
    case LayerKind::kLinear: {
      if (shape_numel(in) != spec.in) {
        return fail("flattened size " + std::to_string(shape_numel(in)) + " != " +
                    std::to_string(spec.in));
      }
      if (spec.reshape.empty()) return {spec.out};
      if (shape_numel(spec.reshape) != spec.out) return fail("reshape target does not hold out_features");
      return spec.reshape;
    }
    case LayerKind::kRelu:
    case LayerKind::kSigmoid: return in;
  }
  return fail("unknown layer kind");
}

}  // namespace tae::nn
