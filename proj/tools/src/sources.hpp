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
#include <string>

#include "tae/data/dataset.hpp"

namespace tae::cli {

// Dataset source strings accepted by every command:
//   synth:N[:seed]        generated 8x8 shapes
//   idx:IMAGES,LABELS     MNIST / Fashion-MNIST IDX pair
//   cifar:PATH            CIFAR-10 binary batch
//   aenc:PATH | PATH.aenc encrypted dataset file
struct DatasetSource {
  enum class Kind { kSynth, kIdx, kCifar, kAenc } kind = Kind::kSynth;
  std::size_t synth_count = 0;
  std::uint64_t synth_seed = 0;
  std::string path;
  std::string labels_path;
  std::string text;
};

// Throws ConfigError on a malformed source string.
DatasetSource parse_source(const std::string& text);
data::Dataset load_source(const DatasetSource& source);

}  // namespace tae::cli
