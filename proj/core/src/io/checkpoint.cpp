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

#include "tae/io/checkpoint.hpp"

#include <algorithm>

#include "tae/error.hpp"

namespace tae::io {
namespace {

constexpr std::string_view kMagic = "ATAE";
constexpr std::string_view kFormat = "ATAE checkpoint";
constexpr std::uint32_t kMaxNameLength = 4096;
constexpr std::uint32_t kMaxRank = 8;

}  // namespace

Bytes encode_checkpoint(const Checkpoint& ckpt) {
  ByteWriter w;
  w.raw(kMagic);
  w.u16_le(kCheckpointVersion);
  w.u32_le(static_cast<std::uint32_t>(ckpt.size()));
  for (const auto& [name, t] : ckpt) {
    w.u32_le(static_cast<std::uint32_t>(name.size()));
    w.raw(name);
    w.u32_le(static_cast<std::uint32_t>(t.rank()));
    for (auto d : t.shape()) w.u32_le(static_cast<std::uint32_t>(d));
    for (double v : t.data()) w.f32_le(static_cast<float>(v));
  }
  w.u32_le(crc32(w.bytes()));
  return w.take();
}

Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw ParseError(std::string(kFormat) + ": file too short", 0);
  const auto body = bytes.first(bytes.size() - 4);
  ByteReader r(body);
  r.expect_magic(kMagic, kFormat);
  const std::size_t version_at = r.offset();
  if (const auto version = r.u16_le(); version != kCheckpointVersion) {
    throw ParseError(std::string(kFormat) + ": unsupported version " + std::to_string(version),
                     version_at);
  }
  const std::uint32_t count = r.u32_le();
  Checkpoint out;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t entry_at = r.offset();
    const std::uint32_t name_len = r.u32_le();
    if (name_len > kMaxNameLength) throw ParseError(std::string(kFormat) + ": implausible name length", entry_at);
    std::string name = r.str(name_len);
    const std::size_t rank_at = r.offset();
    const std::uint32_t rank = r.u32_le();
    if (rank > kMaxRank) throw ParseError(std::string(kFormat) + ": implausible rank", rank_at);
    Shape shape(rank);
    std::uint64_t numel = 1;
    for (auto& d : shape) {
      d = r.u32_le();
      if (d != 0 && numel > r.remaining() / d) {
        throw ParseError(std::string(kFormat) + ": tensor larger than file", r.offset());
      }
      numel *= d;
    }
    if (numel * 4 > r.remaining()) {
      throw ParseError(std::string(kFormat) + ": tensor '" + name + "' truncated", r.offset());
    }
    std::vector<double> data(numel);
    for (auto& v : data) v = r.f32_le();
    out.push_back({std::move(name), Tensor(std::move(shape), std::move(data))});
  }
  r.expect_end(kFormat);

  ByteReader tail(bytes.last(4));
  const std::uint32_t stored = tail.u32_le();
  if (stored != crc32(body)) {
    throw ParseError(std::string(kFormat) + ": CRC32 mismatch", bytes.size() - 4);
  }
  return out;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  write_file(path, encode_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(read_file(path));
}

const Tensor& find_tensor(const Checkpoint& ckpt, const std::string& name) {
  auto it = std::find_if(ckpt.begin(), ckpt.end(), [&](const auto& e) { return e.name == name; });
  if (it == ckpt.end()) throw ParseError(std::string(kFormat) + ": missing tensor '" + name + "'", 0);
  return it->tensor;
}

bool has_tensor(const Checkpoint& ckpt, const std::string& name) {
  return std::any_of(ckpt.begin(), ckpt.end(), [&](const auto& e) { return e.name == name; });
}

}  // namespace tae::io
