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

#include "tae/io/binary.hpp"

namespace tae::io {

// 8-bit RGB, row-major, 3 bytes per pixel. Output is byte-deterministic.
Bytes encode_png_rgb(std::size_t width, std::size_t height, std::span<const std::uint8_t> rgb);
void write_png_rgb(const std::filesystem::path& path, std::size_t width, std::size_t height,
                   std::span<const std::uint8_t> rgb);

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  Bytes pixels;
};

RgbImage decode_png_rgb(std::span<const std::uint8_t> png);

}  // namespace tae::io
