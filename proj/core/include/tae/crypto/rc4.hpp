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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tae/data/dataset.hpp"

namespace tae::crypto {

// RC4 cipher state. S stays a permutation of 0..255 throughout.
class Rc4State {
 public:
  // Key-scheduling algorithm. Key length must be 1..256 bytes.
  explicit Rc4State(std::span<const std::uint8_t> key);
  explicit Rc4State(std::string_view key);

  std::uint8_t next();
  void keystream(std::span<std::uint8_t> out);

  const std::array<std::uint8_t, 256>& permutation() const { return s_; }
  std::uint8_t i() const { return i_; }
  std::uint8_t j() const { return j_; }

  friend bool operator==(const Rc4State&, const Rc4State&) = default;

 private:
  std::array<std::uint8_t, 256> s_{};
  std::uint8_t i_ = 0;
  std::uint8_t j_ = 0;
};

Rc4State rc4_init(std::span<const std::uint8_t> key);

// XOR with the next bytes.size() keystream bytes; advances the state.
std::vector<std::uint8_t> rc4_apply(Rc4State& state, std::span<const std::uint8_t> bytes);

// Quantizes each pixel to round(x*255), XORs one continuous keystream over
// the samples in index order and maps back with /255. Labels, split marker
// and shape are preserved.
data::Dataset rc4_encrypt_dataset(const data::Dataset& d, std::span<const std::uint8_t> key);
data::Dataset rc4_encrypt_dataset(const data::Dataset& d, std::string_view key);

}  // namespace tae::crypto
