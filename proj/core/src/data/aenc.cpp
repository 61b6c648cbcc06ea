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

#include <algorithm>

#include "tae/data/formats.hpp"
#include "tae/error.hpp"

namespace tae::data {
namespace {

constexpr std::string_view kFormat = "AENC dataset";
constexpr std::uint32_t kMaxRank = 8;

}  // namespace

io::Bytes encode_aenc(const Dataset& d) {
  d.validate();
  io::ByteWriter w;
  w.raw(std::string_view("AENC"));
  w.u16_le(kAencVersion);
  w.u32_le(static_cast<std::uint32_t>(d.images.rank()));
  for (auto dim : d.images.shape()) w.u32_le(static_cast<std::uint32_t>(dim));
  for (double v : d.images.data()) w.f32_le(static_cast<float>(v));
  for (int l : d.labels) w.u32_le(static_cast<std::uint32_t>(l));
  w.u32_le(io::crc32(w.bytes()));
  return w.take();
}

Dataset decode_aenc(std::span<const std::uint8_t> bytes, std::size_t num_classes) {
  if (bytes.size() < 4) throw ParseError(std::string(kFormat) + ": file too short", 0);
  const auto body = bytes.first(bytes.size() - 4);
  io::ByteReader r(body);
  r.expect_magic("AENC", kFormat);
  const std::size_t version_at = r.offset();
  if (const auto v = r.u16_le(); v != kAencVersion) {
    throw ParseError(std::string(kFormat) + ": unsupported version " + std::to_string(v), version_at);
  }
  const std::size_t rank_at = r.offset();
  const std::uint32_t rank = r.u32_le();
  if (rank != 4) throw ParseError(std::string(kFormat) + ": expected rank 4, got " + std::to_string(rank), rank_at);
  Shape shape(rank);
  std::uint64_t numel = 1;
  for (auto& dim : shape) {
    dim = r.u32_le();
    if (dim != 0 && numel > r.remaining() / dim) {
      throw ParseError(std::string(kFormat) + ": tensor larger than file", r.offset());
    }
    numel *= dim;
  }
  const std::uint64_t need = numel * 4 + static_cast<std::uint64_t>(shape[0]) * 4;
  if (need != r.remaining()) {
    throw ParseError(std::string(kFormat) + ": header promises " + std::to_string(need) +
                         " payload bytes, file has " + std::to_string(r.remaining()),
                     r.offset());
  }
  std::vector<double> data(numel);
  for (auto& v : data) v = r.f32_le();
  std::vector<int> labels(shape[0]);
  for (auto& l : labels) {
    const std::uint32_t raw = r.u32_le();
    if (raw > 0xFFFF) throw ParseError(std::string(kFormat) + ": implausible label", r.offset() - 4);
    l = static_cast<int>(raw);
  }
  r.expect_end(kFormat);
  if (io::ByteReader(bytes.last(4)).u32_le() != io::crc32(body)) {
    throw ParseError(std::string(kFormat) + ": CRC32 mismatch", bytes.size() - 4);
  }

  Dataset d;
  d.name = "aenc";
  d.encoding = "encrypted";
  d.images = Tensor(std::move(shape), std::move(data));
  d.labels = std::move(labels);
  const int max_label = d.labels.empty() ? 0 : *std::max_element(d.labels.begin(), d.labels.end());
  d.num_classes = num_classes ? num_classes : static_cast<std::size_t>(max_label) + 1;
  d.validate();
  return d;
}

void save_aenc(const std::filesystem::path& path, const Dataset& d) {
  io::write_file(path, encode_aenc(d));
}

Dataset load_aenc(const std::filesystem::path& path, std::size_t num_classes) {
  Dataset d = decode_aenc(io::read_file(path), num_classes);
  d.name = path.stem().string();
  return d;
}

}  // namespace tae::data
