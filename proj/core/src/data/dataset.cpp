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

#include "tae/data/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>

#include "tae/error.hpp"

namespace tae::data {

Shape Dataset::sample_shape() const {
  return Shape(images.shape().begin() + 1, images.shape().end());
}

Dataset Dataset::rows(std::size_t begin, std::size_t end) const {
  Dataset out{name, encoding, images.slice_rows(begin, end),
              std::vector<int>(labels.begin() + static_cast<std::ptrdiff_t>(begin),
                               labels.begin() + static_cast<std::ptrdiff_t>(end)),
              num_classes, std::nullopt};
  return out;
}

Dataset Dataset::train_part() const {
  if (!train_count) throw Error(name + ": dataset has no train/val split");
  return rows(0, *train_count);
}

Dataset Dataset::val_part() const {
  if (!train_count) throw Error(name + ": dataset has no train/val split");
  return rows(*train_count, size());
}

Dataset Dataset::subset(std::span<const std::size_t> idx) const {
  Dataset out{name, encoding, gather_rows(images, idx), {}, num_classes, std::nullopt};
  out.labels.reserve(idx.size());
  for (auto i : idx) out.labels.push_back(labels.at(i));
  return out;
}

void Dataset::validate() const {
  if (images.rank() != 4) throw Error(name + ": images must be [N,C,H,W], got " + shape_str(images.shape()));
  if (images.dim(0) != labels.size()) {
    throw Error(name + ": " + std::to_string(images.dim(0)) + " images but " +
                std::to_string(labels.size()) + " labels");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= num_classes) {
      throw Error(name + ": label " + std::to_string(labels[i]) + " at index " + std::to_string(i) +
                  " outside [0, " + std::to_string(num_classes) + ")");
    }
  }
  if (train_count && *train_count > labels.size()) throw Error(name + ": split marker past the end");
}

void validate_pixels(const Dataset& d) {
  const auto px = d.images.data();
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (!(px[i] >= 0.0 && px[i] <= 1.0)) {
      throw Error(d.name + ": pixel " + std::to_string(i) + " = " + std::to_string(px[i]) +
                  " outside [0,1]");
    }
  }
}

SplitRatio parse_ratio(std::string_view text) {
  const auto colon = text.find(':');
  auto parse = [&](std::string_view part) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v < 1) {
      throw ConfigError("split ratio must look like a:b with a,b >= 1, got '" + std::string(text) + "'");
    }
    return v;
  };
  if (colon == std::string_view::npos) parse("");
  return {parse(text.substr(0, colon)), parse(text.substr(colon + 1))};
}

std::vector<std::size_t> class_counts(const Dataset& d) {
  std::vector<std::size_t> counts(d.num_classes, 0);
  for (int l : d.labels) counts.at(static_cast<std::size_t>(l))++;
  return counts;
}

Dataset split(const Dataset& d, SplitRatio ratio, std::uint64_t seed) {
  d.validate();
  const std::size_t n = d.size();
  const double val_fraction = static_cast<double>(ratio.val) / static_cast<double>(ratio.train + ratio.val);
  const auto total_val = static_cast<std::size_t>(std::llround(static_cast<double>(n) * val_fraction));
  if (total_val == 0 || total_val == n) {
    throw Error(d.name + ": " + std::to_string(n) + " samples cannot fill both sides of a " +
                std::to_string(ratio.train) + ":" + std::to_string(ratio.val) + " split");
  }

  std::vector<std::vector<std::size_t>> by_class(d.num_classes);
  for (std::size_t i = 0; i < n; ++i) by_class[static_cast<std::size_t>(d.labels[i])].push_back(i);
  std::mt19937_64 rng(seed);
  for (auto& rows : by_class) std::shuffle(rows.begin(), rows.end(), rng);

  // Largest-remainder apportionment of total_val across classes.
  std::vector<std::size_t> quota(d.num_classes);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < d.num_classes; ++c) {
    const double exact = static_cast<double>(by_class[c].size()) * static_cast<double>(total_val) /
                         static_cast<double>(n);
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    assigned += quota[c];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total_val; ++k) {
    const std::size_t c = remainders[k % remainders.size()].second;
    if (quota[c] < by_class[c].size()) {
      ++quota[c];
      ++assigned;
    }
  }

  std::vector<std::size_t> train, val;
  for (std::size_t c = 0; c < d.num_classes; ++c) {
    const auto& rows = by_class[c];
    val.insert(val.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(quota[c]));
    train.insert(train.end(), rows.begin() + static_cast<std::ptrdiff_t>(quota[c]), rows.end());
  }
  std::shuffle(train.begin(), train.end(), rng);
  std::shuffle(val.begin(), val.end(), rng);

  std::vector<std::size_t> order = train;
  order.insert(order.end(), val.begin(), val.end());
  Dataset out = d.subset(order);
  out.train_count = train.size();
  return out;
}

}  // namespace tae::data
