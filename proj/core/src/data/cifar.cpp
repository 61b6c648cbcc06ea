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

Dataset decode_cifar10(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % kCifarRecordBytes != 0) {
    throw ParseError("CIFAR-10: length " + std::to_string(bytes.size()) + " is not a multiple of " +
                         std::to_string(kCifarRecordBytes),
                     bytes.size() - bytes.size() % kCifarRecordBytes);
  }
  const std::size_t n = bytes.size() / kCifarRecordBytes;
  Dataset d;
  d.name = "cifar10";
  d.num_classes = 10;
  d.images = Tensor(Shape{n, 3, 32, 32});
  d.labels.reserve(n);
  auto out = d.images.data();
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint8_t* rec = bytes.data() + r * kCifarRecordBytes;
    if (rec[0] > 9) {
      throw ParseError("CIFAR-10: label " + std::to_string(rec[0]) + " > 9 in record " + std::to_string(r),
                       r * kCifarRecordBytes);
    }
    d.labels.push_back(rec[0]);
    for (std::size_t i = 0; i < kCifarRecordBytes - 1; ++i) out[r * 3072 + i] = rec[1 + i] / 255.0;
  }
  return d;
}

Dataset load_cifar10(const std::filesystem::path& path) {
  Dataset d = decode_cifar10(io::read_file(path));
  d.name = path.stem().string();
  return d;
}

io::Bytes encode_cifar10(const Dataset& d) {
  d.validate();
  if (d.sample_shape() != Shape{3, 32, 32}) throw ShapeError("CIFAR-10 records are 3x32x32");
  io::ByteWriter w;
  auto px = d.images.data();
  for (std::size_t r = 0; r < d.size(); ++r) {
    w.u8(static_cast<std::uint8_t>(d.labels[r]));
    for (std::size_t i = 0; i < 3072; ++i) {
      w.u8(static_cast<std::uint8_t>(std::lround(std::clamp(px[r * 3072 + i], 0.0, 1.0) * 255.0)));
    }
  }
  return w.take();
}

}  // namespace tae::data
