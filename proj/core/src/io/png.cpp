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

#include "tae/io/png.hpp"

#include <png.h>

#include <csetjmp>
#include <cstring>

#include "tae/error.hpp"

namespace tae::io {
namespace {

struct ReadCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void write_to_vector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<Bytes*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void flush_noop(png_structp) {}

void read_from_span(png_structp png, png_bytep data, png_size_t length) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->pos + length > cur->bytes.size()) png_error(png, "truncated PNG");
  std::memcpy(data, cur->bytes.data() + cur->pos, length);
  cur->pos += length;
}

// libpng reports errors by longjmp; these wrappers keep every C++ object
// outside the frames it unwinds.
bool write_rows(png_structp png, png_infop info, Bytes* out, std::size_t width, std::size_t height,
                const std::uint8_t* rgb) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_write_fn(png, out, write_to_vector, flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t r = 0; r < height; ++r) png_write_row(png, const_cast<png_bytep>(rgb + r * width * 3));
  png_write_end(png, nullptr);
  return true;
}

bool read_header(png_structp png, png_infop info, ReadCursor* cur, png_uint_32* width, png_uint_32* height,
                 int* color, int* depth) {
  if (setjmp(png_jmpbuf(png))) return false;
  png_set_read_fn(png, cur, read_from_span);
  png_read_info(png, info);
  *width = png_get_image_width(png, info);
  *height = png_get_image_height(png, info);
  *color = png_get_color_type(png, info);
  *depth = png_get_bit_depth(png, info);
  return true;
}

bool read_rows(png_structp png, std::uint8_t* pixels, std::size_t width, std::size_t height) {
  if (setjmp(png_jmpbuf(png))) return false;
  for (std::size_t r = 0; r < height; ++r) png_read_row(png, pixels + r * width * 3, nullptr);
  return true;
}

}  // namespace

Bytes encode_png_rgb(std::size_t width, std::size_t height, std::span<const std::uint8_t> rgb) {
  if (width == 0 || height == 0 || rgb.size() != width * height * 3) {
    throw ShapeError("PNG: pixel buffer does not match " + std::to_string(width) + "x" + std::to_string(height));
  }
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) throw Error("libpng: cannot allocate write structs");
  Bytes out;
  const bool ok = write_rows(png, info, &out, width, height, rgb.data());
  png_destroy_write_struct(&png, &info);
  if (!ok) throw Error("libpng: PNG encoding failed");
  return out;
}

void write_png_rgb(const std::filesystem::path& path, std::size_t width, std::size_t height,
                   std::span<const std::uint8_t> rgb) {
  write_file(path, encode_png_rgb(width, height, rgb));
}

RgbImage decode_png_rgb(std::span<const std::uint8_t> bytes) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) throw Error("libpng: cannot allocate read structs");
  ReadCursor cur{bytes, 0};
  png_uint_32 width = 0, height = 0;
  int color = 0, depth = 0;
  RgbImage img;
  bool ok = read_header(png, info, &cur, &width, &height, &color, &depth);
  if (ok && (color != PNG_COLOR_TYPE_RGB || depth != 8)) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("PNG: only 8-bit RGB is supported");
  }
  if (ok) {
    img.width = width;
    img.height = height;
    img.pixels.resize(img.width * img.height * 3);
    ok = read_rows(png, img.pixels.data(), img.width, img.height);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (!ok) throw Error("libpng: PNG decoding failed");
  return img;
}

}  // namespace tae::io
