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

#include "tae/data/dataset.hpp"
#include "tae/io/binary.hpp"

namespace tae::data {

// IDX (MNIST / Fashion-MNIST): big-endian. Images: magic 0x00000803,
// dims N,H,W, u8 pixels. Labels: magic 0x00000801, dim N, u8 labels.
inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

Dataset decode_idx(std::span<const std::uint8_t> images, std::span<const std::uint8_t> labels,
                   std::size_t num_classes = 10);
Dataset load_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t num_classes = 10);
// Pixels are quantized with round(x*255); the dataset must be single-channel.
io::Bytes encode_idx_images(const Dataset& d);
io::Bytes encode_idx_labels(const Dataset& d);
void write_idx(const Dataset& d, const std::filesystem::path& images,
               const std::filesystem::path& labels);

// CIFAR-10 binary batch: records of 1 label byte + 3072 pixel bytes
// (3x32x32, channel-major).
inline constexpr std::size_t kCifarRecordBytes = 3073;

Dataset decode_cifar10(std::span<const std::uint8_t> bytes);
Dataset load_cifar10(const std::filesystem::path& path);
io::Bytes encode_cifar10(const Dataset& d);

// "AENC" encrypted dataset file, little-endian:
//   magic "AENC" | u16 version | u32 rank | u32 dims[rank] | f32 data |
//   u32 labels[dims[0]] | u32 CRC32 of everything before it
inline constexpr std::uint16_t kAencVersion = 1;

io::Bytes encode_aenc(const Dataset& d);
// num_classes is inferred as max(label)+1 unless given.
Dataset decode_aenc(std::span<const std::uint8_t> bytes, std::size_t num_classes = 0);
void save_aenc(const std::filesystem::path& path, const Dataset& d);
Dataset load_aenc(const std::filesystem::path& path, std::size_t num_classes = 0);

}  // namespace tae::data
