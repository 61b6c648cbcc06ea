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

#include <cmath>

#include "tae/data/formats.hpp"
#include "tae/error.hpp"

namespace tae::data {
namespace {

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

Dataset decode_idx(std::span<const std::uint8_t> images, std::span<const std::uint8_t> labels,
                   std::size_t num_classes) {
  io::ByteReader ri(images);
  if (ri.u32_be() != kIdxImagesMagic) throw ParseError("IDX images: bad magic", 0);
  const std::uint32_t n = ri.u32_be();
  const std::uint32_t h = ri.u32_be();
  const std::uint32_t w = ri.u32_be();
  const std::uint64_t pixels = static_cast<std::uint64_t>(n) * h * w;
  if (pixels != ri.remaining()) {
    throw ParseError("IDX images: header promises " + std::to_string(pixels) + " pixel bytes, file has " +
                         std::to_string(ri.remaining()),
                     ri.offset());
  }

  io::ByteReader rl(labels);
  if (rl.u32_be() != kIdxLabelsMagic) throw ParseError("IDX labels: bad magic", 0);
  const std::size_t count_at = rl.offset();
  const std::uint32_t nl = rl.u32_be();
  if (nl != n) {
    throw ParseError("IDX labels: " + std::to_string(nl) + " labels for " + std::to_string(n) + " images",
                     count_at);
  }
  if (rl.remaining() != nl) {
    throw ParseError("IDX labels: header promises " + std::to_string(nl) + " label bytes, file has " +
                         std::to_string(rl.remaining()),
                     rl.offset());
  }

  Dataset d;
  d.name = "idx";
  d.num_classes = num_classes;
  d.images = Tensor(Shape{n, 1, h, w});
  auto px = ri.raw(pixels);
  auto out = d.images.data();
  for (std::size_t i = 0; i < px.size(); ++i) out[i] = px[i] / 255.0;
  const std::size_t labels_at = rl.offset();
  auto lb = rl.raw(nl);
  d.labels.reserve(nl);
  for (std::size_t i = 0; i < lb.size(); ++i) {
    if (lb[i] >= num_classes) {
      throw ParseError("IDX labels: label " + std::to_string(lb[i]) + " outside [0, " +
                           std::to_string(num_classes) + ")",
                       labels_at + i);
    }
    d.labels.push_back(lb[i]);
  }
  return d;
}

Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t num_classes) {
  Dataset d = decode_idx(io::read_file(images), io::read_file(labels), num_classes);
  d.name = images.stem().string();
  return d;
}

io::Bytes encode_idx_images(const Dataset& d) {
  d.validate();
  if (d.images.dim(1) != 1) throw ShapeError("IDX holds single-channel images only");
  io::ByteWriter w;
  w.u32_be(kIdxImagesMagic);
  w.u32_be(static_cast<std::uint32_t>(d.images.dim(0)));
  w.u32_be(static_cast<std::uint32_t>(d.images.dim(2)));
  w.u32_be(static_cast<std::uint32_t>(d.images.dim(3)));
  for (double v : d.images.data()) w.u8(quantize(v));
  return w.take();
}

io::Bytes encode_idx_labels(const Dataset& d) {
  d.validate();
  io::ByteWriter w;
  w.u32_be(kIdxLabelsMagic);
  w.u32_be(static_cast<std::uint32_t>(d.labels.size()));
  for (int l : d.labels) w.u8(static_cast<std::uint8_t>(l));
  return w.take();
}

void write_idx(const Dataset& d, const std::filesystem::path& images,
               const std::filesystem::path& labels) {
  io::write_file(images, encode_idx_images(d));
  io::write_file(labels, encode_idx_labels(d));
}

}  // namespace tae::data
