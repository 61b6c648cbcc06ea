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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tae/io/binary.hpp"
#include "tae/tensor/tensor.hpp"

namespace tae::io {

// "ATAE" checkpoint: the portable model format shared by training, the CLI
// and the wire protocol.
//
//   magic "ATAE" | u16 version | u32 tensor count
//   per tensor: u32 name length | name | u32 rank | u32 dims[rank] | f32 data
//   u32 CRC32 of everything before it
//
// All integers and floats little-endian. Values are narrowed to float32.
inline constexpr std::uint16_t kCheckpointVersion = 1;

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

using Checkpoint = std::vector<NamedTensor>;

Bytes encode_checkpoint(const Checkpoint& ckpt);
Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes);

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

const Tensor& find_tensor(const Checkpoint& ckpt, const std::string& name);
bool has_tensor(const Checkpoint& ckpt, const std::string& name);

}  // namespace tae::io
