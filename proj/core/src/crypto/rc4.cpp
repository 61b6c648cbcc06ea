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

#include "tae/crypto/rc4.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "tae/error.hpp"

namespace tae::crypto {

Rc4State::Rc4State(std::span<const std::uint8_t> key) {
  if (key.empty() || key.size() > 256) {
    throw ConfigError("RC4 key must be 1..256 bytes, got " + std::to_string(key.size()));
  }
  std::iota(s_.begin(), s_.end(), std::uint8_t{0});
  std::uint8_t j = 0;
  for (std::size_t i = 0; i < 256; ++i) {
    j = static_cast<std::uint8_t>(j + s_[i] + key[i % key.size()]);
    std::swap(s_[i], s_[j]);
  }
}

Rc4State::Rc4State(std::string_view key)
    : Rc4State(std::span(reinterpret_cast<const std::uint8_t*>(key.data()), key.size())) {}

std::uint8_t Rc4State::next() {
  i_ = static_cast<std::uint8_t>(i_ + 1);
  j_ = static_cast<std::uint8_t>(j_ + s_[i_]);
  std::swap(s_[i_], s_[j_]);
  return s_[static_cast<std::uint8_t>(s_[i_] + s_[j_])];
}

void Rc4State::keystream(std::span<std::uint8_t> out) {
  for (auto& b : out) b = next();
}

Rc4State rc4_init(std::span<const std::uint8_t> key) { return Rc4State(key); }

std::vector<std::uint8_t> rc4_apply(Rc4State& state, std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> out(bytes.begin(), bytes.end());
  for (auto& b : out) b ^= state.next();
  return out;
}

data::Dataset rc4_encrypt_dataset(const data::Dataset& d, std::span<const std::uint8_t> key) {
  Rc4State state(key);
  data::Dataset out = d;
  out.encoding = "rc4";
  for (auto& v : out.images.data()) {
    const auto q = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    v = static_cast<double>(q ^ state.next()) / 255.0;
  }
  return out;
}

data::Dataset rc4_encrypt_dataset(const data::Dataset& d, std::string_view key) {
  return rc4_encrypt_dataset(d, std::span(reinterpret_cast<const std::uint8_t*>(key.data()), key.size()));
}

}  // namespace tae::crypto
