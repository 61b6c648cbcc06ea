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

#include "sources.hpp"

#include <charconv>

#include "tae/data/formats.hpp"
#include "tae/data/synth.hpp"
#include "tae/error.hpp"

namespace tae::cli {
namespace {

std::uint64_t parse_uint(std::string_view s, const std::string& context) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
    throw ConfigError("dataset source '" + context + "': '" + std::string(s) + "' is not a non-negative integer");
  }
  return v;
}

}  // namespace

DatasetSource parse_source(const std::string& text) {
  DatasetSource src;
  src.text = text;
  const auto colon = text.find(':');
  const std::string scheme = colon == std::string::npos ? "" : text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? text : text.substr(colon + 1);
  if (scheme == "synth") {
    src.kind = DatasetSource::Kind::kSynth;
    const auto second = rest.find(':');
    src.synth_count = parse_uint(rest.substr(0, second), text);
    if (second != std::string::npos) src.synth_seed = parse_uint(rest.substr(second + 1), text);
  } else if (scheme == "idx") {
    src.kind = DatasetSource::Kind::kIdx;
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw ConfigError("dataset source '" + text + "': expected idx:IMAGES,LABELS");
    src.path = rest.substr(0, comma);
    src.labels_path = rest.substr(comma + 1);
  } else if (scheme == "cifar") {
    src.kind = DatasetSource::Kind::kCifar;
    src.path = rest;
  } else if (scheme == "aenc" || (scheme.empty() && text.ends_with(".aenc"))) {
    src.kind = DatasetSource::Kind::kAenc;
    src.path = rest;
  } else {
    throw ConfigError("dataset source '" + text +
                      "': expected synth:N[:seed], idx:IMAGES,LABELS, cifar:PATH or an .aenc file");
  }
  if (src.kind != DatasetSource::Kind::kSynth && src.path.empty()) {
    throw ConfigError("dataset source '" + text + "': empty path");
  }
  return src;
}

data::Dataset load_source(const DatasetSource& source) {
  data::Dataset d;
  switch (source.kind) {
    case DatasetSource::Kind::kSynth: d = data::synth_shapes(source.synth_count, source.synth_seed); break;
    case DatasetSource::Kind::kIdx: d = data::load_idx(source.path, source.labels_path); break;
    case DatasetSource::Kind::kCifar: d = data::load_cifar10(source.path); break;
    case DatasetSource::Kind::kAenc: d = data::load_aenc(source.path); break;
  }
  d.name = source.text;
  return d;
}

}  // namespace tae::cli
