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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tae/tensor/tensor.hpp"

namespace tae::data {

inline constexpr std::string_view kPlainEncoding = "plain";

// Labeled images [N,C,H,W]. `encoding` names the representation ("plain",
// or the encryptor that produced it); classifiers refuse to mix encodings.
// When `train_count` is set the first train_count rows are the training
// split and the rest the validation split.
struct Dataset {
  std::string name;
  std::string encoding{kPlainEncoding};
  Tensor images{Shape{0, 1, 1, 1}};
  std::vector<int> labels;
  std::size_t num_classes = 10;
  std::optional<std::size_t> train_count;

  std::size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }
  Shape sample_shape() const;
  bool has_split() const { return train_count.has_value(); }

  Dataset train_part() const;
  Dataset val_part() const;
  // Rows in the given order; the split marker is dropped.
  Dataset subset(std::span<const std::size_t> rows) const;
  Dataset rows(std::size_t begin, std::size_t end) const;

  // Label count/range and image rank. Throws Error.
  void validate() const;
};

// Throws Error if any pixel lies outside [0,1] or is non-finite.
void validate_pixels(const Dataset& d);

struct SplitRatio {
  std::size_t train = 1;
  std::size_t val = 1;
};

// "a:b" with a, b >= 1.
SplitRatio parse_ratio(std::string_view text);

// Stratified, seeded split. The result holds the train rows first, then the
// validation rows, with train_count set. Per-class validation quotas come
// from largest-remainder apportionment of round(N*b/(a+b)).
Dataset split(const Dataset& d, SplitRatio ratio, std::uint64_t seed);

// Per-class sample counts.
std::vector<std::size_t> class_counts(const Dataset& d);

}  // namespace tae::data
